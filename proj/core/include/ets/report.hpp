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

#ifndef ETS_REPORT_HPP_
#define ETS_REPORT_HPP_

#include <string>
#include <vector>

#include "ets/oracle.hpp"
#include "ets/scenario.hpp"
#include "ets/simulation.hpp"

namespace ets {

// Shortest decimal form that round-trips a double (so equal runs give
// byte-equal files).
std::string format_number(double value);

std::string rounds_csv(const SimulationResult& result);
std::string trades_csv(const SimulationResult& result);
std::string summary_json(const ScenarioConfig& config,
                         const SimulationResult& result);
std::string witnesses_json(const std::vector<CheckResult>& checks);

struct SweepCell {
  std::string param;
  std::string value;
  SimulationResult result;
};
std::string sweep_csv(const std::vector<SweepCell>& cells);

void write_file(const std::string& path, const std::string& content);

}  // namespace ets

#endif  // ETS_REPORT_HPP_
