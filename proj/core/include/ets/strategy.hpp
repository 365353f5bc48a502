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

#ifndef ETS_STRATEGY_HPP_
#define ETS_STRATEGY_HPP_

#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "ets/market.hpp"
#include "ets/rng.hpp"
#include "ets/secondary.hpp"
#include "ets/types.hpp"

namespace ets {

struct StrategySpec;

struct Truthful {
  bool operator==(const Truthful&) const = default;
};

// Per-unit multiplicative shading. A single factor broadcasts over all
// units; otherwise the factor list must match the profile length.
struct Shaded {
  std::vector<double> factors;
  bool clamp = true;  // restore monotonicity by capping at the previous bid

  bool operator==(const Shaded&) const = default;
};

// Shades an underlying strategy further to leave room for secondary-market
// purchases.
struct SecondaryAware {
  std::shared_ptr<StrategySpec> base;
  double extra_shade = 0.0;
};

// Monte Carlo grid search for a flat bid on units_demanded units.
struct SpeculatorGrid {
  BidGrid grid;
  int mc_samples = 200;
  int units_demanded = 1;

  bool operator==(const SpeculatorGrid&) const = default;
};

struct FixedBids {
  std::vector<Money> bids;
  bool operator==(const FixedBids&) const = default;
};

struct StrategySpec {
  std::variant<Truthful, Shaded, SecondaryAware, SpeculatorGrid, FixedBids> v;
};

bool operator==(const StrategySpec& a, const StrategySpec& b);
bool operator==(const SecondaryAware& a, const SecondaryAware& b);
inline bool operator!=(const StrategySpec& a, const StrategySpec& b) {
  return !(a == b);
}

StrategySpec make_truthful();
StrategySpec make_shaded(std::vector<double> factors, bool clamp = true);
StrategySpec make_secondary_aware(StrategySpec base, double extra_shade);
StrategySpec make_speculator_grid(BidGrid grid, int mc_samples = 200,
                                  int units_demanded = 1);
StrategySpec make_fixed(std::vector<Money> bids);

BidSchedule truthful_schedule(const ValuationProfile& profile);
BidSchedule shaded_schedule(const ValuationProfile& profile,
                            const std::vector<double>& factors,
                            bool clamp = true);
BidSchedule secondary_aware_schedule(const StrategySpec& base,
                                     const ValuationProfile& profile,
                                     double extra_shade);

// Everything a strategy may consult besides its own profile.
struct StrategyContext {
  const MarketConfig* market = nullptr;
  const std::map<FirmId, StrategySpec>* strategies = nullptr;
  SecondaryConfig secondary;
  Money reserve = 0.0;
  PricingRule rule = PricingRule::HighestLosingBid;
  RngStream mc;  // sample stream for Monte Carlo strategies
};

// Expected-profit-maximizing flat bid over the grid, evaluated against
// mc_samples opponent draws shared across all candidates. Opponent schedules
// come from the context's strategy map; resale of won units follows the
// context's secondary config. Ties go to the lowest bid.
BidSchedule speculator_schedule(const SpeculatorGrid& spec,
                                const ValuationProfile& profile,
                                const StrategyContext& context);

// Strategy lookup for a firm: exact id, then "default", else truthful.
const StrategySpec& strategy_for(const std::map<FirmId, StrategySpec>& specs,
                                 const FirmId& id);

BidSchedule build_schedule(const StrategySpec& spec,
                           const ValuationProfile& profile,
                           const StrategyContext& context);

std::vector<BidSchedule> build_schedules(
    const std::map<FirmId, StrategySpec>& specs,
    const std::vector<ValuationProfile>& profiles,
    const StrategyContext& context);

}  // namespace ets

#endif  // ETS_STRATEGY_HPP_
