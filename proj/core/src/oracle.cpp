// Copyright 2026 The ets-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ets/oracle.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "ets/market.hpp"
#include "ets/strategy.hpp"

namespace ets {

namespace {

using nlohmann::json;

json to_json(const Allocation& alloc) {
  json j = json::object();
  for (const auto& [id, units] : alloc.units) j[id] = units;
  return j;
}

json to_json(const std::vector<ValuationProfile>& profiles) {
  json j = json::array();
  for (const auto& p : profiles) {
    j.push_back({{"firm", p.firm_id},
                 {"values", p.values},
                 {"speculator", p.kind == FirmKind::Speculator}});
  }
  return j;
}

json to_json(const BidSchedule& s) {
  return json{{"firm", s.firm_id}, {"bids", s.bids}};
}

// Number of non-increasing vectors of length <= max_len over `points` grid
// values: C(points + max_len, max_len), saturated at cap + 1.
std::uint64_t count_schedules(std::uint64_t points, std::uint64_t max_len,
                              std::uint64_t cap) {
  unsigned __int128 num = 1;
  for (std::uint64_t i = 1; i <= max_len; ++i) {
    num = num * (points + i) / i;  // exact: product of i consecutive ints / i!
    if (num > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(num);
}

// Held first-unit values, one entry per unit, sorted descending.
std::vector<Money> held_value_multiset(
    const Allocation& alloc, const std::vector<ValuationProfile>& profiles) {
  std::vector<Money> vals;
  for (const auto& p : profiles) {
    int held = alloc.units_for(p.firm_id);
    for (int u = 0; u < held; ++u) vals.push_back(p.value_at(u));
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

bool same_multiset(const std::vector<Money>& a, const std::vector<Money>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (money::ne(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

EnumerationResult enumerate_allocations_max_surplus(
    const std::vector<ValuationProfile>& profiles, int k, std::uint64_t cap) {
  if (profiles.empty()) {
    throw Error(Errc::EmptyMarket, "no valuation profiles");
  }
  int total_demand = 0;
  for (const auto& p : profiles) {
    validate_profile(p, k);
    total_demand += p.demand();
  }
  int target = std::min(k, total_demand);
  size_t n = profiles.size();

  // Count assignments before enumerating; refuse oversized instances.
  {
    std::vector<std::uint64_t> ways(target + 1, 0);
    ways[0] = 1;
    for (const auto& p : profiles) {
      std::vector<std::uint64_t> next(target + 1, 0);
      for (int t = 0; t <= target; ++t) {
        if (!ways[t]) continue;
        for (int x = 0; x <= p.demand() && t + x <= target; ++x) {
          next[t + x] = std::min<std::uint64_t>(
              cap + 1, next[t + x] + ways[t]);
        }
      }
      ways = std::move(next);
    }
    if (ways[target] > cap) {
      throw Error(Errc::InstanceTooLarge,
                  "allocation count exceeds enumeration cap");
    }
  }

  // Suffix demand capacity for pruning to exact-total assignments.
  std::vector<int> suffix(n + 1, 0);
  for (size_t i = n; i > 0; --i) {
    suffix[i - 1] = suffix[i] + profiles[i - 1].demand();
  }

  EnumerationResult result;
  result.max_surplus = -1.0;
  std::vector<int> units(n, 0);
  std::function<void(size_t, int, Money)> rec = [&](size_t i, int left,
                                                    Money surplus) {
    if (i == n) {
      if (left != 0) return;
      ++result.enumerated;
      if (money::gt(surplus, result.max_surplus)) {
        result.max_surplus = surplus;
        result.argmax.clear();
      }
      if (money::eq(surplus, result.max_surplus)) {
        Allocation a;
        for (size_t f = 0; f < n; ++f) a.add(profiles[f].firm_id, units[f]);
        result.argmax.push_back(std::move(a));
      }
      return;
    }
    int hi = std::min(left, profiles[i].demand());
    int lo = std::max(0, left - suffix[i + 1]);
    for (int x = lo; x <= hi; ++x) {
      units[i] = x;
      rec(i + 1, left - x, surplus + profiles[i].value_of(x));
    }
    units[i] = 0;
  };
  rec(0, target, 0.0);
  return result;
}

CheckResult check_efficiency_equivalence(
    const std::vector<ValuationProfile>& profiles, int k, std::uint64_t cap) {
  Allocation greedy = efficient_allocation(profiles, k);
  Money greedy_surplus = total_surplus(greedy, profiles);
  EnumerationResult en = enumerate_allocations_max_surplus(profiles, k, cap);

  std::vector<Money> greedy_values = held_value_multiset(greedy, profiles);
  bool surplus_match = money::eq(greedy_surplus, en.max_surplus);
  const Allocation* mismatch = nullptr;
  for (const Allocation& a : en.argmax) {
    if (!same_multiset(held_value_multiset(a, profiles), greedy_values)) {
      mismatch = &a;
      break;
    }
  }

  CheckResult out;
  out.name = "efficiency_equivalence";
  out.pass = surplus_match && mismatch == nullptr;
  json details{{"k", k},
               {"profiles", to_json(profiles)},
               {"greedy_allocation", to_json(greedy)},
               {"greedy_surplus", greedy_surplus},
               {"max_surplus", en.max_surplus},
               {"argmax_count", en.argmax.size()},
               {"allocations_enumerated", en.enumerated},
               {"surplus_match", surplus_match}};
  if (mismatch) details["mismatched_maximizer"] = to_json(*mismatch);
  out.details = details.dump();
  return out;
}

namespace {

struct PayoffEvaluator {
  const std::vector<ValuationProfile>* profiles;
  std::vector<BidSchedule> others;
  const ValuationProfile* self = nullptr;
  int k;
  bool with_secondary;
  SecondaryConfig secondary;
  Money reserve;
  PricingRule rule;

  Money operator()(const BidSchedule& candidate, Money* price_out = nullptr) const {
    std::vector<BidSchedule> all = others;
    if (candidate.size() > 0) all.push_back(candidate);
    if (all.empty()) {
      if (price_out) *price_out = reserve;
      if (!with_secondary) return 0.0;
      SecondaryResult sec = run_secondary(Allocation{}, *profiles,
                                          secondary, reserve);
      return firm_trade_payoff(sec, self->firm_id);
    }
    AuctionOutcome outcome = clear_auction(all, {}, k, reserve, rule);
    if (price_out) *price_out = outcome.clearing_price;
    int won = outcome.allocation.units_for(self->firm_id);
    Money payoff = self->value_of(won) - outcome.clearing_price * won;
    if (with_secondary) {
      SecondaryResult sec = run_secondary(outcome.allocation, *profiles,
                                          secondary, outcome.clearing_price);
      payoff += firm_trade_payoff(sec, self->firm_id);
    }
    return payoff;
  }
};

// Emits every non-increasing vector over the grid with length <= max_len,
// shorter prefixes first, ascending within a level.
void for_each_schedule(const std::vector<Money>& points, int max_len,
                       const std::function<void(const std::vector<Money>&)>& fn) {
  std::vector<Money> cur;
  std::function<void(size_t)> rec = [&](size_t max_index) {
    fn(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (size_t i = 0; i < max_index; ++i) {
      cur.push_back(points[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(points.size());
}

}  // namespace

DeviationReport best_response(const FirmId& firm_id,
                              const std::vector<ValuationProfile>& profiles,
                              const std::vector<BidSchedule>& all_schedules,
                              int k, const BidGrid& grid, bool with_secondary,
                              const SecondaryConfig& secondary, Money reserve,
                              PricingRule rule, std::uint64_t cap) {
  if (grid.points.empty()) {
    throw Error(Errc::EmptyGrid, "bid grid is empty");
  }
  for (size_t i = 1; i < grid.points.size(); ++i) {
    if (grid.points[i] <= grid.points[i - 1]) {
      throw Error(Errc::InvalidArgument, "grid must be strictly increasing");
    }
  }

  PayoffEvaluator eval;
  eval.profiles = &profiles;
  eval.k = k;
  eval.with_secondary = with_secondary;
  eval.secondary = secondary;
  eval.reserve = reserve;
  eval.rule = rule;
  for (const auto& p : profiles) {
    if (p.firm_id == firm_id) eval.self = &p;
  }
  if (!eval.self) {
    throw Error(Errc::UnknownFirmId, firm_id + " has no valuation profile");
  }

  BidSchedule current{firm_id, {}};
  for (const auto& s : all_schedules) {
    if (s.firm_id == firm_id) {
      current = s;
    } else {
      eval.others.push_back(s);
    }
  }

  int max_len = std::min(grid.max_units, k);
  std::uint64_t count =
      count_schedules(grid.points.size(), static_cast<std::uint64_t>(max_len),
                      cap);
  if (count > cap) {
    throw Error(Errc::InstanceTooLarge,
                "schedule count exceeds enumeration cap");
  }

  DeviationReport report;
  report.firm_id = firm_id;
  report.current_payoff = eval(current);
  report.best_schedule = current;
  report.best_payoff = report.current_payoff;

  for_each_schedule(grid.points, max_len, [&](const std::vector<Money>& bids) {
    ++report.candidates_evaluated;
    BidSchedule candidate{firm_id, bids};
    Money payoff = eval(candidate);
    if (money::gt(payoff, report.best_payoff)) {
      report.best_payoff = payoff;
      report.best_schedule = candidate;
    }
  });
  report.gain_over_current = report.best_payoff - report.current_payoff;
  return report;
}

CheckResult check_speculator_price_monotonicity(
    const std::vector<BidSchedule>& schedules,
    const BidSchedule& speculator_schedule, int k, Money reserve) {
  AuctionOutcome without = clear_auction(schedules, {}, k, reserve);
  std::vector<BidSchedule> with_spec = schedules;
  with_spec.push_back(speculator_schedule);
  AuctionOutcome with = clear_auction(with_spec, {}, k, reserve);

  bool won = with.allocation.units_for(speculator_schedule.firm_id) > 0;
  bool weak = money::ge(with.clearing_price, without.clearing_price);
  bool strict = money::gt(with.clearing_price, without.clearing_price);

  CheckResult out;
  out.name = "speculator_price_monotonicity";
  out.pass = weak;
  out.details = json{{"k", k},
                     {"price_without", without.clearing_price},
                     {"price_with", with.clearing_price},
                     {"speculator_schedule", to_json(speculator_schedule)},
                     {"speculator_won", won},
                     {"strict", strict}}
                    .dump();
  return out;
}

CheckResult check_secondary_shading(
    const std::vector<ValuationProfile>& profiles,
    const std::vector<BidSchedule>& baseline_schedules, int k,
    const BidGrid& grid, const SecondaryConfig& secondary,
    std::uint64_t cap) {
  json firms = json::array();
  bool pass = true;
  for (const auto& p : profiles) {
    if (p.kind == FirmKind::Speculator) continue;
    DeviationReport with = best_response(p.firm_id, profiles,
                                         baseline_schedules, k, grid, true,
                                         secondary, 0.0,
                                         PricingRule::HighestLosingBid, cap);
    DeviationReport without = best_response(p.firm_id, profiles,
                                            baseline_schedules, k, grid, false,
                                            secondary, 0.0,
                                            PricingRule::HighestLosingBid, cap);
    size_t len = std::max(with.best_schedule.bids.size(),
                          without.best_schedule.bids.size());
    bool elementwise = true;
    for (size_t u = 0; u < len; ++u) {
      Money bw = u < with.best_schedule.bids.size()
                     ? with.best_schedule.bids[u] : 0.0;
      Money bo = u < without.best_schedule.bids.size()
                     ? without.best_schedule.bids[u] : 0.0;
      if (money::gt(bw, bo)) {
        elementwise = false;
        break;
      }
    }

    auto price_when = [&](const BidSchedule& s) {
      std::vector<BidSchedule> all;
      for (const auto& b : baseline_schedules) {
        if (b.firm_id != p.firm_id) all.push_back(b);
      }
      if (s.size() > 0) all.push_back(s);
      if (all.empty()) return Money{0.0};
      return clear_auction(all, {}, k).clearing_price;
    };
    Money price_with = price_when(with.best_schedule);
    Money price_without = price_when(without.best_schedule);
    bool price_ok = money::le(price_with, price_without);

    if (!elementwise || !price_ok) pass = false;
    firms.push_back({{"firm", p.firm_id},
                     {"best_with_secondary", to_json(with.best_schedule)},
                     {"best_without_secondary", to_json(without.best_schedule)},
                     {"elementwise_leq", elementwise},
                     {"price_with", price_with},
                     {"price_without", price_without},
                     {"price_leq", price_ok}});
  }

  CheckResult out;
  out.name = "secondary_shading";
  out.pass = pass;
  out.details = json{{"k", k},
                     {"beta", secondary.beta},
                     {"cost_floor", secondary.cost_floor},
                     {"profiles", to_json(profiles)},
                     {"firms", firms}}
                    .dump();
  return out;
}

CheckResult check_remark_zero_profit(
    const std::vector<ValuationProfile>& profiles, int k, const BidGrid& grid,
    const SecondaryConfig& secondary, std::uint64_t cap) {
  std::vector<ValuationProfile> all = profiles;
  bool has_speculator = false;
  for (const auto& p : all) {
    if (p.kind == FirmKind::Speculator) has_speculator = true;
  }
  if (!has_speculator) {
    ValuationProfile s;
    s.firm_id = kSpeculatorId;
    s.kind = FirmKind::Speculator;
    s.values.assign(k, 0.0);
    all.push_back(std::move(s));
  }

  FirmId spec_id;
  std::vector<BidSchedule> schedules;
  for (const auto& p : all) {
    if (p.kind == FirmKind::Speculator) {
      spec_id = p.firm_id;
    } else {
      schedules.push_back(truthful_schedule(p));
    }
  }

  DeviationReport report = best_response(spec_id, all, schedules, k, grid,
                                         true, secondary, 0.0,
                                         PricingRule::HighestLosingBid, cap);
  CheckResult out;
  out.name = "remark_zero_profit";
  out.pass = money::le(report.best_payoff, 0.0);
  out.details = json{{"k", k},
                     {"profiles", to_json(all)},
                     {"best_schedule", to_json(report.best_schedule)},
                     {"best_payoff", report.best_payoff},
                     {"candidates_evaluated", report.candidates_evaluated}}
                    .dump();
  return out;
}

}  // namespace ets
