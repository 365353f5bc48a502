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

#ifndef ETS_SCENARIO_HPP_
#define ETS_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ets/market.hpp"
#include "ets/secondary.hpp"
#include "ets/strategy.hpp"
#include "ets/types.hpp"

namespace ets {

struct BankingPolicy {
  bool enabled = false;
  int cap_per_firm = 0;
  // Only ReduceDemand is defined: a banked unit covers the head of the
  // firm's next-round demand vector.

  bool operator==(const BankingPolicy&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  std::vector<std::string> formats = {"csv", "json"};

  bool operator==(const OutputConfig&) const = default;
};

// Instance families for the verification suite.
struct VerifyConfig {
  int efficiency_instances = 1000;   // efficiency + resale-restoration checks
  int price_monotonicity_instances = 1000;
  int shading_instances = 200;
  int remark_instances = 500;
  int n_min = 2;
  int n_max = 5;
  int k_min = 1;
  int k_max = 4;
  Money value_lo = 0.0;
  Money value_hi = 10.0;
  Money grid_step = 0.5;
  std::uint64_t enumeration_cap = 10'000'000;

  bool operator==(const VerifyConfig&) const = default;
};

struct ScenarioConfig {
  MarketConfig market;
  std::map<FirmId, StrategySpec> strategies;  // "default" applies to the rest
  SecondaryConfig secondary;
  BankingPolicy banking;
  int rounds = 1;
  int replications = 1;
  OutputConfig output;
  VerifyConfig verify;

  bool operator==(const ScenarioConfig&) const = default;
};

// Canonical JSON round trip: parse(serialize(c)) == c.
std::string serialize(const ScenarioConfig& config);
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

// Throws Errc::ConfigError with a field path on any violated invariant.
void validate_scenario(const ScenarioConfig& config);

}  // namespace ets

#endif  // ETS_SCENARIO_HPP_
