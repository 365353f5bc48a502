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

#include "ets/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ets {

using nlohmann::json;

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw Error(Errc::IoError, "number formatting failed");
  }
  return std::string(buf, ptr);
}

std::string rounds_csv(const SimulationResult& result) {
  std::ostringstream os;
  os << "replication,round";
  for (const auto& name : metric_names()) os << ',' << name;
  os << '\n';
  for (const auto& series : result.replications) {
    for (const auto& round : series.rounds) {
      os << series.replication << ',' << round.round_index;
      for (double v : metric_values(round.metrics)) {
        os << ',' << format_number(v);
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string trades_csv(const SimulationResult& result) {
  std::ostringstream os;
  os << "replication,round,seller,buyer,price,seller_value,buyer_value,rent\n";
  for (const auto& series : result.replications) {
    for (const auto& round : series.rounds) {
      if (!round.secondary) continue;
      for (const auto& t : round.secondary->trades) {
        os << series.replication << ',' << round.round_index << ','
           << t.seller << ',' << t.buyer << ',' << format_number(t.price)
           << ',' << format_number(t.seller_value) << ','
           << format_number(t.buyer_value) << ',' << format_number(t.rent)
           << '\n';
      }
    }
  }
  return os.str();
}

std::string summary_json(const ScenarioConfig& config,
                         const SimulationResult& result) {
  json aggregates = json::object();
  for (const auto& [name, st] : result.aggregates) {
    aggregates[name] = {{"mean", st.mean},
                        {"stddev", st.stddev},
                        {"min", st.min},
                        {"max", st.max}};
  }
  int rounds_total = 0;
  for (const auto& s : result.replications) {
    rounds_total += static_cast<int>(s.rounds.size());
  }
  json j{{"config", json::parse(serialize(config))},
         {"seed", config.market.seed},
         {"replications", config.replications},
         {"rounds_per_replication", config.rounds},
         {"rounds_total", rounds_total},
         {"aggregates", aggregates}};
  return j.dump(2) + "\n";
}

std::string witnesses_json(const std::vector<CheckResult>& checks) {
  json items = json::array();
  int passed = 0;
  for (const auto& c : checks) {
    if (c.pass) ++passed;
    items.push_back({{"name", c.name},
                     {"pass", c.pass},
                     {"details", json::parse(c.details)}});
  }
  json j{{"total", checks.size()}, {"passed", passed}, {"checks", items}};
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "param,value";
  for (const auto& name : metric_names()) os << ",mean_" << name;
  os << '\n';
  for (const auto& cell : cells) {
    os << cell.param << ',' << cell.value;
    for (const auto& name : metric_names()) {
      os << ',' << format_number(cell.result.aggregates.at(name).mean);
    }
    os << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::IoError, "cannot open " + path + " for writing");
  }
  out << content;
  if (!out) {
    throw Error(Errc::IoError, "failed writing " + path);
  }
}

}  // namespace ets
