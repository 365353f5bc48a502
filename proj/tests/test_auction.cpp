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

#include <doctest.h>

#include "ets/auction.hpp"

using namespace ets;

namespace {

// Two-unit demands over four permits; the worked example used throughout.
std::vector<ValuationProfile> four_bidders() {
  return {{"B1", {10, 9}, FirmKind::Polluter},
          {"B2", {8, 7}, FirmKind::Polluter},
          {"B3", {6, 5}, FirmKind::Polluter},
          {"B4", {4, 3}, FirmKind::Polluter}};
}

}  // namespace

TEST_CASE("truthful bidding clears at the highest losing bid") {
  auto profiles = four_bidders();
  std::vector<BidSchedule> bids = {
      {"B1", {10, 9}}, {"B2", {8, 7}}, {"B3", {6, 5}}, {"B4", {4, 3}}};
  AuctionOutcome out = clear_auction(bids, profiles, 4);
  CHECK(out.clearing_price == 6.0);
  CHECK(out.revenue == 24.0);
  CHECK(out.allocation.units_for("B1") == 2);
  CHECK(out.allocation.units_for("B2") == 2);
  CHECK(out.allocation.units_for("B3") == 0);
  CHECK(out.per_firm_surplus.at("B1") == 7.0);
  CHECK(out.per_firm_surplus.at("B2") == 3.0);
  CHECK(out.per_firm_surplus.at("B3") == 0.0);
  CHECK(out.per_firm_surplus.at("B4") == 0.0);
}

TEST_CASE("demand reduction lowers the price and spreads the permits") {
  auto profiles = four_bidders();
  std::vector<BidSchedule> bids = {
      {"B1", {10, 7}}, {"B2", {8, 5}}, {"B3", {6, 4}}, {"B4", {4, 2}}};
  AuctionOutcome out = clear_auction(bids, profiles, 4);
  CHECK(out.clearing_price == 5.0);
  CHECK(out.revenue == 20.0);
  CHECK(out.allocation.units_for("B1") == 2);
  CHECK(out.allocation.units_for("B2") == 1);
  CHECK(out.allocation.units_for("B3") == 1);
  CHECK(out.per_firm_surplus.at("B1") == 9.0);  // values 10 + 9 minus 2 * 5
  CHECK(out.per_firm_surplus.at("B2") == 3.0);
  CHECK(out.per_firm_surplus.at("B3") == 1.0);
}

TEST_CASE("a speculator bid between losing bids raises the price") {
  auto profiles = four_bidders();
  profiles.push_back({"s", {0, 0, 0, 0}, FirmKind::Speculator});
  std::vector<BidSchedule> bids = {
      {"B1", {10, 7}}, {"B2", {8, 5}}, {"B3", {6, 4}}, {"B4", {4, 2}},
      {"s", {6.5}}};
  AuctionOutcome out = clear_auction(bids, profiles, 4);
  CHECK(out.clearing_price == 6.0);
  CHECK(out.revenue == 24.0);
  CHECK(out.allocation.units_for("B1") == 2);
  CHECK(out.allocation.units_for("B2") == 1);
  CHECK(out.allocation.units_for("s") == 1);
  CHECK(out.per_firm_surplus.at("B1") == 7.0);
  CHECK(out.per_firm_surplus.at("B2") == 2.0);
  CHECK(out.per_firm_surplus.at("s") == -6.0);
}

TEST_CASE("stronger demand reduction with a tied speculator bid") {
  auto profiles = four_bidders();
  profiles.push_back({"s", {0, 0, 0, 0}, FirmKind::Speculator});
  std::vector<BidSchedule> bids = {
      {"B1", {10, 5}}, {"B2", {8, 4}}, {"B3", {6, 3}}, {"B4", {4, 2}},
      {"s", {6}}};
  AuctionOutcome out = clear_auction(bids, profiles, 4);
  // B3's 6 and s's 6 both land in the top four; B1's second bid of 5 prices.
  CHECK(out.clearing_price == 5.0);
  CHECK(out.allocation.units_for("B1") == 1);
  CHECK(out.allocation.units_for("B2") == 1);
  CHECK(out.allocation.units_for("B3") == 1);
  CHECK(out.allocation.units_for("s") == 1);
  CHECK(out.per_firm_surplus.at("B1") == 5.0);
  CHECK(out.per_firm_surplus.at("B2") == 3.0);
  CHECK(out.per_firm_surplus.at("B3") == 1.0);
  CHECK(out.per_firm_surplus.at("s") == -5.0);
}

TEST_CASE("marginal ties go to the lexicographically smaller firm") {
  std::vector<BidSchedule> bids = {{"A", {5}}, {"B", {5}}};
  AuctionOutcome out = clear_auction(bids, {}, 1);
  CHECK(out.allocation.units_for("A") == 1);
  CHECK(out.allocation.units_for("B") == 0);
  // The losing twin bid sets the price; a bid equal to the price loses.
  CHECK(out.clearing_price == 5.0);
}

TEST_CASE("reserve prices the auction when bids run out") {
  std::vector<BidSchedule> bids = {{"A", {4}}, {"B", {3}}};
  AuctionOutcome out = clear_auction(bids, {}, 3, 3.5);
  CHECK(out.clearing_price == 3.5);
  CHECK(out.allocation.total() == 1);  // only the 4 clears the reserve
  CHECK(out.revenue == 3.5);

  AuctionOutcome all_in = clear_auction(bids, {}, 3, 0.0);
  CHECK(all_in.clearing_price == 0.0);
  CHECK(all_in.allocation.total() == 2);
}

TEST_CASE("lowest winning bid pricing is available as an alternative") {
  std::vector<BidSchedule> bids = {{"A", {7}}, {"B", {5}}, {"C", {3}}};
  AuctionOutcome out =
      clear_auction(bids, {}, 2, 0.0, PricingRule::LowestWinningBid);
  CHECK(out.clearing_price == 5.0);
  CHECK(out.revenue == 10.0);
}

TEST_CASE("auction input errors carry specific codes") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an Error");
    return Errc::IoError;
  };
  CHECK(code_of([] { clear_auction({}, {}, 1); }) == Errc::EmptyMarket);
  CHECK(code_of([] { clear_auction({{"A", {1}}}, {}, 0); }) ==
        Errc::InvalidArgument);
  CHECK(code_of([] { clear_auction({{"A", {1}}, {"A", {1}}}, {}, 1); }) ==
        Errc::DuplicateFirmId);
  CHECK(code_of([] { clear_auction({{"A", {3, 2, 1}}}, {}, 2); }) ==
        Errc::TooManyUnits);
}

TEST_CASE("efficient allocation hands permits to the highest values") {
  auto profiles = four_bidders();
  Allocation eff = efficient_allocation(profiles, 4);
  CHECK(eff.units_for("B1") == 2);
  CHECK(eff.units_for("B2") == 2);
  CHECK(total_surplus(eff, profiles) == 34.0);

  std::vector<ValuationProfile> singles = {{"A", {4}, FirmKind::Polluter},
                                           {"B", {9}, FirmKind::Polluter}};
  Allocation one = efficient_allocation(singles, 1);
  CHECK(one.units_for("B") == 1);
  CHECK(one.units_for("A") == 0);
}

TEST_CASE("surplus decomposition splits value into revenue and bidder gain") {
  auto profiles = four_bidders();
  std::vector<BidSchedule> bids = {
      {"B1", {10, 9}}, {"B2", {8, 7}}, {"B3", {6, 5}}, {"B4", {4, 3}}};
  AuctionOutcome out = clear_auction(bids, profiles, 4);
  SurplusDecomposition d = surplus_decomposition(out, profiles);
  CHECK(d.total_surplus == 34.0);
  CHECK(d.revenue == 24.0);
  CHECK(d.bidder_surplus == 10.0);
}

TEST_CASE("surplus rejects allocations naming unknown firms") {
  Allocation a;
  a.add("ghost", 1);
  try {
    total_surplus(a, four_bidders());
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownFirmId);
  }
}
