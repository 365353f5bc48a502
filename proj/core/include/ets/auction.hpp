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

#ifndef ETS_AUCTION_HPP_
#define ETS_AUCTION_HPP_

#include <map>
#include <vector>

#include "ets/types.hpp"

namespace ets {

enum class PricingRule { HighestLosingBid, LowestWinningBid };

struct AuctionOutcome {
  Money clearing_price = 0.0;
  Allocation allocation;
  Money revenue = 0.0;
  // Value of units won minus payments; empty when no profiles were supplied.
  std::map<FirmId, Money> per_firm_surplus;
};

struct SurplusDecomposition {
  Money total_surplus = 0.0;    // allocation value at true marginal values
  Money bidder_surplus = 0.0;   // total_surplus - revenue
  Money revenue = 0.0;
};

// Uniform-price sealed-bid auction for k identical permits. Winners are the
// k highest bids strictly above the reserve, ties broken by firm id then
// unit index. Under HighestLosingBid the price is the (k+1)-th highest bid
// when at least k+1 bids beat the reserve, otherwise the reserve itself.
AuctionOutcome clear_auction(const std::vector<BidSchedule>& schedules,
                             const std::vector<ValuationProfile>& profiles,
                             int k, Money reserve = 0.0,
                             PricingRule rule = PricingRule::HighestLosingBid);

// Value-maximizing assignment of k permits, same tie order as the auction.
Allocation efficient_allocation(const std::vector<ValuationProfile>& profiles,
                                int k);

Money total_surplus(const Allocation& allocation,
                    const std::vector<ValuationProfile>& profiles);

SurplusDecomposition surplus_decomposition(
    const AuctionOutcome& outcome,
    const std::vector<ValuationProfile>& profiles);

}  // namespace ets

#endif  // ETS_AUCTION_HPP_
