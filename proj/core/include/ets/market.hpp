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

#ifndef ETS_MARKET_HPP_
#define ETS_MARKET_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "ets/rng.hpp"
#include "ets/types.hpp"

namespace ets {

struct UniformValues {
  Money lo = 0.0;
  Money hi = 1.0;
  bool operator==(const UniformValues&) const = default;
};

struct DiscreteValues {
  std::vector<Money> values;
  std::vector<double> probabilities;
  bool operator==(const DiscreteValues&) const = default;
};

struct FixedProfiles {
  std::vector<ValuationProfile> profiles;
  bool operator==(const FixedProfiles&) const = default;
};

using ValueDistribution = std::variant<UniformValues, DiscreteValues, FixedProfiles>;

struct MarketConfig {
  int n = 2;  // firms in the market, speculator included when present
  int k = 1;  // permits for sale
  ValueDistribution distribution = UniformValues{0.0, 1.0};
  bool speculator_present = false;
  std::uint64_t seed = 0;

  bool operator==(const MarketConfig&) const = default;
};

// Throws on violated invariants, returns the profile unchanged otherwise.
const ValuationProfile& validate_profile(const ValuationProfile& profile, int k);
const BidSchedule& validate_schedule(const BidSchedule& schedule, int k);
void validate_market(const MarketConfig& config);

// Generated polluter ids: F1, F2, ... (zero padded to equal width).
std::vector<FirmId> polluter_ids(int count);

// Draws one profile per firm. Uniform and Discrete draw a single value per
// polluter, repeated over all k units; Fixed returns the configured profiles
// verbatim. A zero-value speculator "s" is appended when the config asks for
// one and the fixed list does not already carry it.
std::vector<ValuationProfile> sample_profiles(const MarketConfig& config,
                                              RngStream& stream);

}  // namespace ets

#endif  // ETS_MARKET_HPP_
