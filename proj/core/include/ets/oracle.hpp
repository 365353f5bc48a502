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

#ifndef ETS_ORACLE_HPP_
#define ETS_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ets/auction.hpp"
#include "ets/secondary.hpp"
#include "ets/types.hpp"

namespace ets {

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

struct EnumerationResult {
  Money max_surplus = 0.0;
  std::vector<Allocation> argmax;  // every surplus-maximizing allocation
  std::uint64_t enumerated = 0;
};

struct DeviationReport {
  FirmId firm_id;
  BidSchedule best_schedule;
  Money best_payoff = 0.0;
  Money current_payoff = 0.0;
  Money gain_over_current = 0.0;
  Money epsilon = money::kTolerance;
  std::uint64_t candidates_evaluated = 0;
};

// Pass/fail plus a machine-readable witness (JSON text) describing the
// instance and what was compared.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

// Exhaustive search over all ways to hand out exactly min(k, total demand)
// units respecting per-firm demand caps. Refuses above the cap rather than
// sampling, so pass/fail stays meaningful.
EnumerationResult enumerate_allocations_max_surplus(
    const std::vector<ValuationProfile>& profiles, int k,
    std::uint64_t cap = kEnumerationCap);

// Greedy efficient allocation must match the enumerated maximum, and every
// maximizer must hold the same multiset of values (differ only by swapping
// equal-value units).
CheckResult check_efficiency_equivalence(
    const std::vector<ValuationProfile>& profiles, int k,
    std::uint64_t cap = kEnumerationCap);

// Evaluates every non-increasing schedule over the grid (lengths 0 up to
// min(grid.max_units, k)) plus the firm's current schedule. Payoff is
// auction surplus at true values, plus secondary gains when with_secondary
// is set. Ties prefer the shortest, lowest schedule.
DeviationReport best_response(const FirmId& firm_id,
                              const std::vector<ValuationProfile>& profiles,
                              const std::vector<BidSchedule>& all_schedules,
                              int k, const BidGrid& grid, bool with_secondary,
                              const SecondaryConfig& secondary,
                              Money reserve = 0.0,
                              PricingRule rule = PricingRule::HighestLosingBid,
                              std::uint64_t cap = kEnumerationCap);

// Clears with and without the speculator schedule, polluters held fixed;
// price must not fall. Reports strictness when the speculator wins a unit.
CheckResult check_speculator_price_monotonicity(
    const std::vector<BidSchedule>& schedules,
    const BidSchedule& speculator_schedule, int k, Money reserve = 0.0);

// Best response per firm with and without the secondary stage; passes iff
// every with-secondary best response is elementwise <= its counterpart and
// the implied clearing price is <=.
CheckResult check_secondary_shading(
    const std::vector<ValuationProfile>& profiles,
    const std::vector<BidSchedule>& baseline_schedules, int k,
    const BidGrid& grid, const SecondaryConfig& secondary,
    std::uint64_t cap = kEnumerationCap);

// Under truthful polluter bidding, exhaustive speculator search over the
// grid must find no schedule with positive auction + resale profit.
CheckResult check_remark_zero_profit(
    const std::vector<ValuationProfile>& profiles, int k, const BidGrid& grid,
    const SecondaryConfig& secondary, std::uint64_t cap = kEnumerationCap);

}  // namespace ets

#endif  // ETS_ORACLE_HPP_
