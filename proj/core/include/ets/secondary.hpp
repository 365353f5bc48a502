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

#ifndef ETS_SECONDARY_HPP_
#define ETS_SECONDARY_HPP_

#include <vector>

#include "ets/auction.hpp"
#include "ets/types.hpp"

namespace ets {

struct SecondaryConfig {
  bool enabled = false;
  double beta = 0.5;        // buyer's share of the bilateral gap, in (0, 1)
  bool cost_floor = false;  // sellers never price below acquisition cost

  bool operator==(const SecondaryConfig&) const = default;
};

struct TradeRecord {
  FirmId seller;
  FirmId buyer;
  Money price = 0.0;
  Money seller_value = 0.0;  // seller's marginal value of the unit given up
  Money buyer_value = 0.0;   // buyer's marginal value of the unit gained
  Money rent = 0.0;          // price minus the seller's effective reservation

  bool operator==(const TradeRecord&) const = default;
};

struct SecondaryResult {
  std::vector<TradeRecord> trades;
  Allocation final_allocation;
  Money total_rent = 0.0;
  Money value_gain = 0.0;  // sum of buyer_value - seller_value over trades
};

// Runs bilateral trades to a fixed point. Each step moves one unit along the
// largest value gap (ties: buyer id, then seller id) at price
// reservation + beta * (buyer_value - reservation), where the reservation is
// the seller's marginal value, raised to the unit's acquisition cost when the
// cost floor is on. auction_price seeds the acquisition cost of auctioned
// units; it is ignored without the floor.
SecondaryResult run_secondary(const Allocation& initial,
                              const std::vector<ValuationProfile>& profiles,
                              double beta);
SecondaryResult run_secondary(const Allocation& initial,
                              const std::vector<ValuationProfile>& profiles,
                              const SecondaryConfig& config,
                              Money auction_price);

// Sale receipts minus auction payments for the given firm.
Money speculator_resale_profit(const SecondaryResult& secondary,
                               const AuctionOutcome& auction,
                               const FirmId& firm_id = kSpeculatorId);

// Value-based trading gains for one firm: buyer gains value minus price,
// seller gains price minus marginal value.
Money firm_trade_payoff(const SecondaryResult& secondary, const FirmId& firm_id);

}  // namespace ets

#endif  // ETS_SECONDARY_HPP_
