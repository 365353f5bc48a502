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

#include "ets/strategy.hpp"

#include <algorithm>

#include "ets/auction.hpp"

namespace ets {

bool operator==(const SecondaryAware& a, const SecondaryAware& b) {
  if (a.extra_shade != b.extra_shade) return false;
  if (!a.base || !b.base) return !a.base && !b.base;
  return *a.base == *b.base;
}

bool operator==(const StrategySpec& a, const StrategySpec& b) {
  return a.v == b.v;
}

StrategySpec make_truthful() { return {Truthful{}}; }

StrategySpec make_shaded(std::vector<double> factors, bool clamp) {
  return {Shaded{std::move(factors), clamp}};
}

StrategySpec make_secondary_aware(StrategySpec base, double extra_shade) {
  return {SecondaryAware{std::make_shared<StrategySpec>(std::move(base)),
                         extra_shade}};
}

StrategySpec make_speculator_grid(BidGrid grid, int mc_samples,
                                  int units_demanded) {
  return {SpeculatorGrid{std::move(grid), mc_samples, units_demanded}};
}

StrategySpec make_fixed(std::vector<Money> bids) {
  return {FixedBids{std::move(bids)}};
}

BidSchedule truthful_schedule(const ValuationProfile& profile) {
  return {profile.firm_id, profile.values};
}

BidSchedule shaded_schedule(const ValuationProfile& profile,
                            const std::vector<double>& factors, bool clamp) {
  if (factors.empty()) {
    throw Error(Errc::InvalidArgument, "shading needs at least one factor");
  }
  bool broadcast = factors.size() == 1;
  if (!broadcast && factors.size() != profile.values.size()) {
    throw Error(Errc::InvalidArgument,
                profile.firm_id + ": factor count does not match demand");
  }
  BidSchedule out{profile.firm_id, {}};
  out.bids.reserve(profile.values.size());
  for (size_t u = 0; u < profile.values.size(); ++u) {
    double f = broadcast ? factors[0] : factors[u];
    if (f < 0.0 || f > 1.0) {
      throw Error(Errc::InvalidArgument, "shading factor outside [0, 1]");
    }
    Money b = profile.values[u] * f;
    if (u > 0) {
      if (clamp) {
        b = std::min(b, out.bids[u - 1]);
      } else if (b > out.bids[u - 1] + money::kTolerance) {
        throw Error(Errc::ResultNotMonotone,
                    profile.firm_id + ": shaded bids increase at unit " +
                        std::to_string(u));
      }
    }
    out.bids.push_back(b);
  }
  return out;
}

namespace {

// Strategies that need no Monte Carlo machinery.
BidSchedule build_basic(const StrategySpec& spec,
                        const ValuationProfile& profile) {
  if (std::holds_alternative<Truthful>(spec.v)) {
    return truthful_schedule(profile);
  }
  if (const auto* s = std::get_if<Shaded>(&spec.v)) {
    return shaded_schedule(profile, s->factors, s->clamp);
  }
  if (const auto* s = std::get_if<SecondaryAware>(&spec.v)) {
    if (!s->base) {
      throw Error(Errc::InvalidArgument,
                  "secondary_aware needs a base strategy");
    }
    return secondary_aware_schedule(*s->base, profile, s->extra_shade);
  }
  if (const auto* f = std::get_if<FixedBids>(&spec.v)) {
    return {profile.firm_id, f->bids};
  }
  throw Error(Errc::InvalidArgument,
              "grid-search strategy cannot nest inside another strategy");
}

}  // namespace

BidSchedule secondary_aware_schedule(const StrategySpec& base,
                                     const ValuationProfile& profile,
                                     double extra_shade) {
  if (extra_shade < 0.0 || extra_shade > 1.0) {
    throw Error(Errc::InvalidArgument, "extra_shade outside [0, 1]");
  }
  BidSchedule out = build_basic(base, profile);
  for (Money& b : out.bids) b *= (1.0 - extra_shade);
  return out;
}

const StrategySpec& strategy_for(const std::map<FirmId, StrategySpec>& specs,
                                 const FirmId& id) {
  static const StrategySpec kTruthful{Truthful{}};
  auto it = specs.find(id);
  if (it != specs.end()) return it->second;
  it = specs.find("default");
  if (it != specs.end()) return it->second;
  return kTruthful;
}

BidSchedule speculator_schedule(const SpeculatorGrid& spec,
                                const ValuationProfile& profile,
                                const StrategyContext& context) {
  if (spec.grid.points.empty()) {
    throw Error(Errc::EmptyGrid, "speculator grid is empty");
  }
  for (size_t i = 1; i < spec.grid.points.size(); ++i) {
    if (spec.grid.points[i] <= spec.grid.points[i - 1]) {
      throw Error(Errc::InvalidArgument, "grid must be strictly increasing");
    }
  }
  if (spec.mc_samples < 1) {
    throw Error(Errc::InvalidArgument, "mc_samples must be >= 1");
  }
  if (!context.market || !context.strategies) {
    throw Error(Errc::InvalidArgument,
                "grid-search strategy needs market and strategy context");
  }
  int k = context.market->k;
  int units = std::min(std::max(spec.units_demanded, 1), k);

  // Common random numbers: one opponent draw set shared by every candidate.
  std::vector<std::vector<ValuationProfile>> samples;
  std::vector<std::vector<BidSchedule>> opponent_schedules;
  samples.reserve(spec.mc_samples);
  for (int j = 0; j < spec.mc_samples; ++j) {
    RngStream draw = context.mc.derive("sample").derive(
        static_cast<std::uint64_t>(j));
    std::vector<ValuationProfile> ps = sample_profiles(*context.market, draw);
    std::vector<BidSchedule> sched;
    for (const auto& p : ps) {
      if (p.firm_id == profile.firm_id) continue;
      sched.push_back(
          build_basic(strategy_for(*context.strategies, p.firm_id), p));
    }
    samples.push_back(std::move(ps));
    opponent_schedules.push_back(std::move(sched));
  }

  // Abstaining earns zero; a grid bid must beat it strictly.
  BidSchedule best{profile.firm_id, {}};
  Money best_mean = 0.0;
  for (Money b : spec.grid.points) {
    BidSchedule candidate{profile.firm_id,
                          std::vector<Money>(static_cast<size_t>(units), b)};
    Money total = 0.0;
    for (int j = 0; j < spec.mc_samples; ++j) {
      std::vector<BidSchedule> all = opponent_schedules[j];
      all.push_back(candidate);
      AuctionOutcome outcome = clear_auction(all, samples[j], k,
                                             context.reserve, context.rule);
      const ValuationProfile* self = nullptr;
      for (const auto& p : samples[j]) {
        if (p.firm_id == profile.firm_id) self = &p;
      }
      int won = outcome.allocation.units_for(profile.firm_id);
      Money payoff = (self ? self->value_of(won) : 0.0) -
                     outcome.clearing_price * won;
      if (context.secondary.enabled) {
        SecondaryResult sec =
            run_secondary(outcome.allocation, samples[j], context.secondary,
                          outcome.clearing_price);
        payoff += firm_trade_payoff(sec, profile.firm_id);
      }
      total += payoff;
    }
    Money mean = total / spec.mc_samples;
    if (money::gt(mean, best_mean)) {
      best_mean = mean;
      best = candidate;
    }
  }
  return best;
}

BidSchedule build_schedule(const StrategySpec& spec,
                           const ValuationProfile& profile,
                           const StrategyContext& context) {
  if (const auto* g = std::get_if<SpeculatorGrid>(&spec.v)) {
    return speculator_schedule(*g, profile, context);
  }
  return build_basic(spec, profile);
}

std::vector<BidSchedule> build_schedules(
    const std::map<FirmId, StrategySpec>& specs,
    const std::vector<ValuationProfile>& profiles,
    const StrategyContext& context) {
  std::vector<BidSchedule> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) {
    StrategyContext firm_context = context;
    firm_context.mc = context.mc.derive(p.firm_id);
    out.push_back(build_schedule(strategy_for(specs, p.firm_id), p,
                                 firm_context));
  }
  return out;
}

}  // namespace ets
