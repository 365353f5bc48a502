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

#ifndef ETS_TYPES_HPP_
#define ETS_TYPES_HPP_

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ets/money.hpp"

namespace ets {

using FirmId = std::string;

inline const FirmId kSpeculatorId = "s";

enum class FirmKind { Polluter, Speculator };

enum class Errc {
  NonMonotoneValues,
  NegativeValue,
  TooManyUnits,
  SpeculatorNonzeroValue,
  DuplicateFirmId,
  UnknownFirmId,
  EmptyMarket,
  InvalidDistribution,
  InvalidBeta,
  EmptyGrid,
  InstanceTooLarge,
  ResultNotMonotone,
  InvalidArgument,
  ConfigError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

// Marginal values for successive permit units, non-increasing.
struct ValuationProfile {
  FirmId firm_id;
  std::vector<Money> values;
  FirmKind kind = FirmKind::Polluter;

  int demand() const { return static_cast<int>(values.size()); }
  Money value_at(int unit) const {
    return unit >= 0 && unit < demand() ? values[unit] : 0.0;
  }
  // Total value of holding q units.
  Money value_of(int quantity) const {
    Money v = 0.0;
    for (int u = 0; u < quantity && u < demand(); ++u) v += values[u];
    return v;
  }

  bool operator==(const ValuationProfile&) const = default;
};

struct BidSchedule {
  FirmId firm_id;
  std::vector<Money> bids;

  int size() const { return static_cast<int>(bids.size()); }

  bool operator==(const BidSchedule&) const = default;
};

// Units held per firm. Only positive entries are stored.
struct Allocation {
  std::map<FirmId, int> units;

  int units_for(const FirmId& id) const {
    auto it = units.find(id);
    return it == units.end() ? 0 : it->second;
  }
  void add(const FirmId& id, int count) {
    if (count == 0) return;
    int next = units_for(id) + count;
    if (next == 0) {
      units.erase(id);
    } else {
      units[id] = next;
    }
  }
  int total() const {
    return std::accumulate(units.begin(), units.end(), 0,
                           [](int acc, const auto& kv) { return acc + kv.second; });
  }

  bool operator==(const Allocation&) const = default;
};

// Candidate bid levels for grid search, strictly increasing.
struct BidGrid {
  std::vector<Money> points;
  int max_units = 1;

  bool operator==(const BidGrid&) const = default;
};

BidGrid make_grid(Money lo, Money hi, Money step, int max_units = 1);

}  // namespace ets

#endif  // ETS_TYPES_HPP_
