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

#ifndef ETS_SIMULATION_HPP_
#define ETS_SIMULATION_HPP_

#include <map>
#include <optional>
#include <vector>

#include "ets/auction.hpp"
#include "ets/rng.hpp"
#include "ets/scenario.hpp"
#include "ets/secondary.hpp"
#include "ets/types.hpp"

namespace ets {

struct MetricsRow {
  Money clearing_price = 0.0;
  Money revenue = 0.0;
  Money bidder_surplus = 0.0;      // polluters' auction surplus
  Money speculator_profit = 0.0;   // resale receipts minus auction payments
  Money total_rent = 0.0;          // seller rents in the secondary market
  Money holder_value_surplus = 0.0;
  Money net_participant_surplus = 0.0;
  Money efficiency_ratio = 1.0;    // holder value over the efficient maximum
  int misallocated_units = 0;
};

struct RoundResult {
  int round_index = 0;
  std::vector<ValuationProfile> profiles;  // active (banking-adjusted)
  std::vector<BidSchedule> schedules;
  AuctionOutcome auction;
  std::optional<SecondaryResult> secondary;
  MetricsRow metrics;
  std::map<FirmId, int> banked;  // carried into the next round
};

struct ReplicationSeries {
  int replication = 0;
  std::vector<RoundResult> rounds;
};

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population form
  double min = 0.0;
  double max = 0.0;
};

struct SimulationResult {
  std::vector<ReplicationSeries> replications;
  std::map<std::string, MetricStats> aggregates;  // keyed by metric name
};

// Metric names in the CSV column order.
const std::vector<std::string>& metric_names();
std::vector<double> metric_values(const MetricsRow& row);

// One auction round: apply banking to the sampled profiles, build
// schedules, clear, optionally run the secondary market, compute metrics,
// then update the banking state. Deterministic in (stream, round_index).
RoundResult run_round(const ScenarioConfig& config, int round_index,
                      std::map<FirmId, int>& banked,
                      const RngStream& replication_stream);

// Replications run independently (parallel when threads > 1) on derived
// streams and merge in replication order, so the thread count never shows
// in the output.
SimulationResult run_simulation(const ScenarioConfig& config, int threads = 1);

}  // namespace ets

#endif  // ETS_SIMULATION_HPP_
