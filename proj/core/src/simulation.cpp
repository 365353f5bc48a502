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

#include "ets/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "ets/strategy.hpp"

namespace ets {

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "clearing_price",     "revenue",
      "bidder_surplus",     "speculator_profit",
      "total_rent",         "holder_value_surplus",
      "net_participant_surplus", "efficiency_ratio",
      "misallocated_units"};
  return names;
}

std::vector<double> metric_values(const MetricsRow& row) {
  return {row.clearing_price,
          row.revenue,
          row.bidder_surplus,
          row.speculator_profit,
          row.total_rent,
          row.holder_value_surplus,
          row.net_participant_surplus,
          row.efficiency_ratio,
          static_cast<double>(row.misallocated_units)};
}

namespace {

std::vector<Money> held_values(const Allocation& alloc,
                               const std::vector<ValuationProfile>& profiles) {
  std::vector<Money> vals;
  for (const auto& p : profiles) {
    int held = alloc.units_for(p.firm_id);
    for (int u = 0; u < held; ++u) vals.push_back(p.value_at(u));
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

int misallocated_count(const Allocation& held, const Allocation& efficient,
                       const std::vector<ValuationProfile>& profiles) {
  std::vector<Money> have = held_values(held, profiles);
  std::vector<Money> want = held_values(efficient, profiles);
  size_t matched = 0, w = 0;
  for (size_t h = 0; h < have.size() && w < want.size(); ++h) {
    while (w < want.size() && money::gt(want[w], have[h])) ++w;
    if (w < want.size() && money::eq(want[w], have[h])) {
      ++matched;
      ++w;
    }
  }
  return static_cast<int>(have.size() - matched);
}

}  // namespace

RoundResult run_round(const ScenarioConfig& config, int round_index,
                      std::map<FirmId, int>& banked,
                      const RngStream& replication_stream) {
  RoundResult result;
  result.round_index = round_index;

  RngStream value_stream = replication_stream.derive("values").derive(
      static_cast<std::uint64_t>(round_index));
  std::vector<ValuationProfile> profiles =
      sample_profiles(config.market, value_stream);

  // Banked units cover the head of the demand vector; the firm bids only
  // for what inventory does not serve.
  std::map<FirmId, int> leftover;
  if (config.banking.enabled) {
    for (auto& p : profiles) {
      auto it = banked.find(p.firm_id);
      if (it == banked.end() || it->second == 0) continue;
      int used = std::min<int>(it->second, p.demand());
      p.values.erase(p.values.begin(), p.values.begin() + used);
      leftover[p.firm_id] = it->second - used;
    }
  }
  result.profiles = profiles;

  StrategyContext context;
  context.market = &config.market;
  context.strategies = &config.strategies;
  context.secondary = config.secondary;
  context.mc = replication_stream.derive("montecarlo")
                   .derive(static_cast<std::uint64_t>(round_index));
  result.schedules = build_schedules(config.strategies, profiles, context);

  result.auction = clear_auction(result.schedules, profiles, config.market.k);
  const Allocation* final_allocation = &result.auction.allocation;
  if (config.secondary.enabled) {
    result.secondary = run_secondary(result.auction.allocation, profiles,
                                     config.secondary,
                                     result.auction.clearing_price);
    final_allocation = &result.secondary->final_allocation;
  }

  MetricsRow& m = result.metrics;
  m.clearing_price = result.auction.clearing_price;
  m.revenue = result.auction.revenue;
  m.net_participant_surplus = m.revenue;
  for (const auto& p : profiles) {
    Money auction_surplus = result.auction.per_firm_surplus.at(p.firm_id);
    Money trades = result.secondary
                       ? firm_trade_payoff(*result.secondary, p.firm_id)
                       : 0.0;
    m.net_participant_surplus += auction_surplus + trades;
    if (p.kind == FirmKind::Speculator) {
      m.speculator_profit += auction_surplus + trades;
    } else {
      m.bidder_surplus += auction_surplus;
    }
  }
  if (result.secondary) m.total_rent = result.secondary->total_rent;

  m.holder_value_surplus = total_surplus(*final_allocation, profiles);
  Allocation efficient = efficient_allocation(profiles, config.market.k);
  Money best = total_surplus(efficient, profiles);
  if (money::gt(best, 0.0)) {
    m.efficiency_ratio =
        std::clamp(m.holder_value_surplus / best, 0.0, 1.0);
  } else {
    m.efficiency_ratio = 1.0;
  }
  m.misallocated_units =
      misallocated_count(*final_allocation, efficient, profiles);

  if (config.banking.enabled) {
    for (const auto& p : profiles) {
      int extra =
          std::max(0, final_allocation->units_for(p.firm_id) - p.demand());
      int carry = leftover.count(p.firm_id) ? leftover.at(p.firm_id) : 0;
      int next = std::min(config.banking.cap_per_firm, carry + extra);
      if (next > 0) result.banked[p.firm_id] = next;
    }
  }
  banked = result.banked;
  return result;
}

SimulationResult run_simulation(const ScenarioConfig& config, int threads) {
  validate_scenario(config);

  RngStream root(config.market.seed);
  int reps = config.replications;
  std::vector<ReplicationSeries> series(reps);

  auto run_replication = [&](int r) {
    RngStream rep_stream = root.derive("replication").derive(
        static_cast<std::uint64_t>(r));
    ReplicationSeries s;
    s.replication = r;
    std::map<FirmId, int> banked;
    for (int round = 0; round < config.rounds; ++round) {
      s.rounds.push_back(run_round(config, round, banked, rep_stream));
    }
    series[r] = std::move(s);
  };

  int workers = std::clamp(threads, 1, reps);
  if (workers == 1) {
    for (int r = 0; r < reps; ++r) run_replication(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (int r = t; r < reps; r += workers) run_replication(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  SimulationResult result;
  result.replications = std::move(series);

  const auto& names = metric_names();
  std::vector<std::vector<double>> columns(names.size());
  for (const auto& s : result.replications) {
    for (const auto& round : s.rounds) {
      std::vector<double> vals = metric_values(round.metrics);
      for (size_t i = 0; i < vals.size(); ++i) columns[i].push_back(vals[i]);
    }
  }
  for (size_t i = 0; i < names.size(); ++i) {
    MetricStats st;
    const auto& xs = columns[i];
    if (!xs.empty()) {
      double sum = 0.0;
      st.min = xs[0];
      st.max = xs[0];
      for (double x : xs) {
        sum += x;
        st.min = std::min(st.min, x);
        st.max = std::max(st.max, x);
      }
      st.mean = sum / xs.size();
      double var = 0.0;
      for (double x : xs) var += (x - st.mean) * (x - st.mean);
      st.stddev = std::sqrt(var / xs.size());
    }
    result.aggregates[names[i]] = st;
  }
  return result;
}

}  // namespace ets
