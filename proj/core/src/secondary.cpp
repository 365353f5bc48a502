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

#include "ets/secondary.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ets/market.hpp"

namespace ets {

namespace {

struct Holder {
  const ValuationProfile* profile = nullptr;
  int held = 0;
  std::multiset<Money> costs;  // acquisition cost per held unit

  Money marginal_sell_value() const {
    return profile->value_at(held - 1);
  }
  Money marginal_buy_value() const {
    return profile->value_at(held);
  }
};

SecondaryResult run(const Allocation& initial,
                    const std::vector<ValuationProfile>& profiles,
                    double beta, bool cost_floor, Money auction_price) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw Error(Errc::InvalidBeta, "beta must lie strictly inside (0, 1)");
  }

  std::map<FirmId, Holder> holders;
  for (const auto& p : profiles) holders[p.firm_id].profile = &p;
  for (const auto& [id, units] : initial.units) {
    auto it = holders.find(id);
    if (it == holders.end()) {
      throw Error(Errc::UnknownFirmId, "allocation holds units for " + id);
    }
    it->second.held = units;
    for (int u = 0; u < units; ++u) it->second.costs.insert(auction_price);
  }

  SecondaryResult result;
  for (;;) {
    const FirmId* best_seller = nullptr;
    const FirmId* best_buyer = nullptr;
    Money best_gap = 0.0;
    Money best_reservation = 0.0;
    for (const auto& [bid, buyer] : holders) {
      Money vb = buyer.marginal_buy_value();
      for (const auto& [sid, seller] : holders) {
        if (sid == bid || seller.held == 0) continue;
        Money reservation = seller.marginal_sell_value();
        if (cost_floor) {
          reservation = std::max(reservation, *seller.costs.begin());
        }
        Money gap = vb - reservation;
        if (!money::gt(gap, 0.0)) continue;
        // Ties resolved by buyer id, then seller id; map order gives both.
        if (gap > best_gap + money::kTolerance) {
          best_gap = gap;
          best_reservation = reservation;
          best_buyer = &bid;
          best_seller = &sid;
        }
      }
    }
    if (!best_buyer) break;

    Holder& seller = holders.at(*best_seller);
    Holder& buyer = holders.at(*best_buyer);
    TradeRecord trade;
    trade.seller = *best_seller;
    trade.buyer = *best_buyer;
    trade.seller_value = seller.marginal_sell_value();
    trade.buyer_value = buyer.marginal_buy_value();
    trade.price = best_reservation + beta * best_gap;
    trade.rent = trade.price - best_reservation;

    seller.held -= 1;
    seller.costs.erase(seller.costs.begin());
    buyer.held += 1;
    buyer.costs.insert(trade.price);

    result.total_rent += trade.rent;
    result.value_gain += trade.buyer_value - trade.seller_value;
    result.trades.push_back(std::move(trade));
  }

  for (const auto& [id, h] : holders) result.final_allocation.add(id, h.held);
  return result;
}

}  // namespace

SecondaryResult run_secondary(const Allocation& initial,
                              const std::vector<ValuationProfile>& profiles,
                              double beta) {
  return run(initial, profiles, beta, false, 0.0);
}

SecondaryResult run_secondary(const Allocation& initial,
                              const std::vector<ValuationProfile>& profiles,
                              const SecondaryConfig& config,
                              Money auction_price) {
  return run(initial, profiles, config.beta, config.cost_floor, auction_price);
}

Money firm_trade_payoff(const SecondaryResult& secondary,
                        const FirmId& firm_id) {
  Money payoff = 0.0;
  for (const TradeRecord& t : secondary.trades) {
    if (t.buyer == firm_id) payoff += t.buyer_value - t.price;
    if (t.seller == firm_id) payoff += t.price - t.seller_value;
  }
  return payoff;
}

Money speculator_resale_profit(const SecondaryResult& secondary,
                               const AuctionOutcome& auction,
                               const FirmId& firm_id) {
  Money receipts = 0.0;
  for (const TradeRecord& t : secondary.trades) {
    if (t.seller == firm_id) receipts += t.price;
  }
  return receipts -
         auction.clearing_price * auction.allocation.units_for(firm_id);
}

}  // namespace ets
