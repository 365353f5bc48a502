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

#include "ets/auction.hpp"

#include <algorithm>
#include <set>

#include "ets/market.hpp"

namespace ets {

namespace {

struct Entry {
  Money amount;
  int firm;  // index into the id-sorted order
  int unit;
};

// Exact comparisons: a tolerant comparator would not be a strict weak order.
bool entry_before(const Entry& a, const Entry& b) {
  if (a.amount != b.amount) return a.amount > b.amount;
  if (a.firm != b.firm) return a.firm < b.firm;
  return a.unit < b.unit;
}

// Maps each element to the rank of its firm id among the given ids.
template <typename T>
std::vector<int> id_ranks(const std::vector<T>& items) {
  std::vector<const FirmId*> ids;
  ids.reserve(items.size());
  for (const auto& it : items) ids.push_back(&it.firm_id);
  std::vector<int> order(items.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return *ids[a] < *ids[b]; });
  std::vector<int> rank(items.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    if (pos > 0 && *ids[order[pos]] == *ids[order[pos - 1]]) {
      throw Error(Errc::DuplicateFirmId,
                  "duplicate firm id " + *ids[order[pos]]);
    }
    rank[order[pos]] = static_cast<int>(pos);
  }
  return rank;
}

}  // namespace

AuctionOutcome clear_auction(const std::vector<BidSchedule>& schedules,
                             const std::vector<ValuationProfile>& profiles,
                             int k, Money reserve, PricingRule rule) {
  if (schedules.empty()) {
    throw Error(Errc::EmptyMarket, "no bid schedules");
  }
  if (k < 1) {
    throw Error(Errc::InvalidArgument, "k must be >= 1");
  }
  std::vector<int> rank = id_ranks(schedules);

  std::vector<Entry> entries;
  for (size_t i = 0; i < schedules.size(); ++i) {
    validate_schedule(schedules[i], k);
    for (int u = 0; u < schedules[i].size(); ++u) {
      entries.push_back({schedules[i].bids[u], rank[i], u});
    }
  }
  std::sort(entries.begin(), entries.end(), entry_before);

  int eligible = 0;
  for (const Entry& e : entries) {
    if (money::gt(e.amount, reserve)) ++eligible;
  }
  int sold = std::min(k, eligible);

  AuctionOutcome out;
  if (rule == PricingRule::HighestLosingBid) {
    out.clearing_price = reserve;
    if (static_cast<int>(entries.size()) > k) {
      out.clearing_price = std::max(reserve, entries[k].amount);
    }
  } else {
    out.clearing_price = sold > 0 ? entries[sold - 1].amount : reserve;
  }
  out.revenue = out.clearing_price * sold;

  std::vector<const BidSchedule*> by_rank(schedules.size());
  for (size_t i = 0; i < schedules.size(); ++i) by_rank[rank[i]] = &schedules[i];
  for (int w = 0; w < sold; ++w) {
    out.allocation.add(by_rank[entries[w].firm]->firm_id, 1);
  }

  if (!profiles.empty()) {
    for (const auto& p : profiles) {
      int won = out.allocation.units_for(p.firm_id);
      out.per_firm_surplus[p.firm_id] =
          p.value_of(won) - out.clearing_price * won;
    }
  }
  return out;
}

Allocation efficient_allocation(const std::vector<ValuationProfile>& profiles,
                                int k) {
  if (profiles.empty()) {
    throw Error(Errc::EmptyMarket, "no valuation profiles");
  }
  std::vector<int> rank = id_ranks(profiles);
  std::vector<Entry> entries;
  for (size_t i = 0; i < profiles.size(); ++i) {
    validate_profile(profiles[i], k);
    for (int u = 0; u < profiles[i].demand(); ++u) {
      entries.push_back({profiles[i].values[u], rank[i], u});
    }
  }
  std::sort(entries.begin(), entries.end(), entry_before);

  std::vector<const ValuationProfile*> by_rank(profiles.size());
  for (size_t i = 0; i < profiles.size(); ++i) by_rank[rank[i]] = &profiles[i];
  Allocation alloc;
  int take = std::min<int>(k, static_cast<int>(entries.size()));
  for (int w = 0; w < take; ++w) {
    alloc.add(by_rank[entries[w].firm]->firm_id, 1);
  }
  return alloc;
}

Money total_surplus(const Allocation& allocation,
                    const std::vector<ValuationProfile>& profiles) {
  Money total = 0.0;
  std::set<FirmId> known;
  for (const auto& p : profiles) {
    known.insert(p.firm_id);
    total += p.value_of(allocation.units_for(p.firm_id));
  }
  for (const auto& [id, units] : allocation.units) {
    if (!known.count(id)) {
      throw Error(Errc::UnknownFirmId, "allocation holds units for " + id);
    }
  }
  return total;
}

SurplusDecomposition surplus_decomposition(
    const AuctionOutcome& outcome,
    const std::vector<ValuationProfile>& profiles) {
  SurplusDecomposition d;
  d.total_surplus = total_surplus(outcome.allocation, profiles);
  d.revenue = outcome.revenue;
  d.bidder_surplus = d.total_surplus - d.revenue;
  return d;
}

}  // namespace ets
