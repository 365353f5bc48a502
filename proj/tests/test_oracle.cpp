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

#include <algorithm>

#include <json.hpp>

#include "ets/oracle.hpp"
#include "ets/rng.hpp"
#include "ets/strategy.hpp"

using namespace ets;
using nlohmann::json;

namespace {

std::vector<ValuationProfile> four_bidders() {
  return {{"B1", {10, 9}, FirmKind::Polluter},
          {"B2", {8, 7}, FirmKind::Polluter},
          {"B3", {6, 5}, FirmKind::Polluter},
          {"B4", {4, 3}, FirmKind::Polluter}};
}

std::vector<BidSchedule> reduction_bids() {
  return {{"B1", {10, 7}}, {"B2", {8, 5}}, {"B3", {6, 4}}, {"B4", {4, 2}}};
}

}  // namespace

TEST_CASE("the enumerator finds the exact maximum and all its witnesses") {
  std::vector<ValuationProfile> profiles = {
      {"A", {9, 1}, FirmKind::Polluter}, {"B", {8, 7}, FirmKind::Polluter}};
  EnumerationResult r = enumerate_allocations_max_surplus(profiles, 2);
  CHECK(r.max_surplus == 17.0);
  CHECK(r.enumerated == 3);  // splits (2,0), (1,1), (0,2)
  REQUIRE(r.argmax.size() == 1);
  CHECK(r.argmax[0].units_for("A") == 1);
  CHECK(r.argmax[0].units_for("B") == 1);
}

TEST_CASE("tied values produce multiple maximizers") {
  std::vector<ValuationProfile> profiles = {
      {"A", {5}, FirmKind::Polluter}, {"B", {5}, FirmKind::Polluter}};
  EnumerationResult r = enumerate_allocations_max_surplus(profiles, 1);
  CHECK(r.max_surplus == 5.0);
  CHECK(r.argmax.size() == 2);
}

TEST_CASE("oversized instances are refused rather than sampled") {
  std::vector<ValuationProfile> profiles = {
      {"A", {1, 1}, FirmKind::Polluter}, {"B", {1, 1}, FirmKind::Polluter}};
  try {
    enumerate_allocations_max_surplus(profiles, 2, 2);
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InstanceTooLarge);
  }
}

TEST_CASE("greedy allocation matches exhaustive search on the worked example") {
  CheckResult r = check_efficiency_equivalence(four_bidders(), 4);
  CHECK(r.pass);
  CHECK(r.name == "efficiency_equivalence");
  json d = json::parse(r.details);
  CHECK(d.at("greedy_surplus").get<double>() == 34.0);
  CHECK(d.at("max_surplus").get<double>() == 34.0);
}

TEST_CASE("greedy allocation matches exhaustive search on random instances") {
  RngStream stream(9001);
  for (int i = 0; i < 300; ++i) {
    RngStream inst = stream.derive(static_cast<std::uint64_t>(i));
    int n = 2 + static_cast<int>(inst.next_below(3));
    int k = 1 + static_cast<int>(inst.next_below(3));
    std::vector<ValuationProfile> profiles;
    for (int f = 0; f < n; ++f) {
      int len = 1 + static_cast<int>(inst.next_below(k));
      std::vector<Money> values;
      for (int u = 0; u < len; ++u) values.push_back(inst.uniform(0, 10));
      std::sort(values.begin(), values.end(), std::greater<>());
      profiles.push_back({"F" + std::to_string(f), values,
                          FirmKind::Polluter});
    }
    CheckResult r = check_efficiency_equivalence(profiles, k);
    CHECK(r.pass);
  }
}

TEST_CASE("single-unit best response takes the cheapest winning bid") {
  std::vector<ValuationProfile> profiles = {
      {"A", {7}, FirmKind::Polluter}, {"B", {5}, FirmKind::Polluter}};
  std::vector<BidSchedule> schedules = {{"B", {5}}};
  BidGrid grid = make_grid(0, 10, 1.0, 1);
  DeviationReport r = best_response("A", profiles, schedules, 1, grid, false,
                                    SecondaryConfig{});
  // Matching B's 5 already wins: A holds the favorable id tie and pays 5.
  CHECK(r.best_schedule.bids == std::vector<Money>{5.0});
  CHECK(r.best_payoff == 2.0);
  CHECK(r.current_payoff == 0.0);
  CHECK(r.gain_over_current == 2.0);
  CHECK(r.candidates_evaluated == 12);  // the empty schedule plus 11 bids
}

TEST_CASE("best responses never bid above value on a value-aligned grid") {
  auto profiles = four_bidders();
  std::vector<BidSchedule> truthful;
  for (const auto& p : profiles) truthful.push_back(truthful_schedule(p));
  BidGrid grid = make_grid(0, 10, 0.5, 4);
  for (const auto& p : profiles) {
    DeviationReport r = best_response(p.firm_id, profiles, truthful, 4, grid,
                                      false, SecondaryConfig{});
    CHECK(r.gain_over_current >= 0.0);
    for (size_t u = 0; u < r.best_schedule.bids.size(); ++u) {
      CHECK(r.best_schedule.bids[u] <= p.value_at(static_cast<int>(u)));
    }
  }
}

TEST_CASE("a speculator's best response against reduced bids resells at a profit") {
  auto profiles = four_bidders();
  profiles.push_back({"s", {0, 0, 0, 0}, FirmKind::Speculator});
  BidGrid grid = make_grid(0, 10, 0.5, 1);
  DeviationReport r =
      best_response("s", profiles, reduction_bids(), 4, grid, true,
                    SecondaryConfig{true, 0.5, true});
  REQUIRE(r.best_schedule.bids.size() == 1);
  CHECK(r.best_schedule.bids[0] == 6.5);
  CHECK(r.best_schedule.bids[0] > 6.0);
  CHECK(r.best_schedule.bids[0] <= 7.0);
  CHECK(r.best_payoff == 0.5);
  CHECK(r.gain_over_current == 0.5);
}

TEST_CASE("a speculator's best response against truthful bids is to abstain") {
  auto profiles = four_bidders();
  profiles.push_back({"s", {0, 0, 0, 0}, FirmKind::Speculator});
  std::vector<BidSchedule> truthful;
  for (const auto& p : four_bidders()) {
    truthful.push_back(truthful_schedule(p));
  }
  BidGrid grid = make_grid(0, 10, 0.5, 4);
  DeviationReport r = best_response("s", profiles, truthful, 4, grid, true,
                                    SecondaryConfig{true, 0.5, true});
  CHECK(r.best_payoff == 0.0);
  CHECK(r.best_schedule.bids.empty());
}

TEST_CASE("best response enumeration respects the candidate cap") {
  std::vector<ValuationProfile> profiles = {
      {"A", {7, 6, 5, 4}, FirmKind::Polluter}, {"B", {5}, FirmKind::Polluter}};
  BidGrid grid = make_grid(0, 10, 0.1, 4);
  try {
    best_response("A", profiles, {{"B", {5}}}, 4, grid, false,
                  SecondaryConfig{}, 0.0, PricingRule::HighestLosingBid, 100);
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InstanceTooLarge);
  }
}

TEST_CASE("speculator entry never lowers the clearing price") {
  CheckResult with_65 =
      check_speculator_price_monotonicity(reduction_bids(), {"s", {6.5}}, 4);
  CHECK(with_65.pass);
  json d = json::parse(with_65.details);
  CHECK(d.at("price_without").get<double>() == 5.0);
  CHECK(d.at("price_with").get<double>() == 6.0);
  CHECK(d.at("strict").get<bool>());
  CHECK(d.at("speculator_won").get<bool>());

  CheckResult with_zero =
      check_speculator_price_monotonicity(reduction_bids(), {"s", {0}}, 4);
  CHECK(with_zero.pass);
  json dz = json::parse(with_zero.details);
  CHECK(dz.at("price_with").get<double>() == 5.0);
  CHECK_FALSE(dz.at("strict").get<bool>());
  CHECK_FALSE(dz.at("speculator_won").get<bool>());
}

TEST_CASE("no speculator schedule profits against truthful polluters") {
  CheckResult r = check_remark_zero_profit(
      four_bidders(), 4, make_grid(0, 10, 0.5, 4),
      SecondaryConfig{true, 0.5, true});
  CHECK(r.pass);
  json d = json::parse(r.details);
  CHECK(d.at("best_payoff").get<double>() <= 0.0);
  CHECK(d.at("candidates_evaluated").get<std::uint64_t>() == 12650);
}

TEST_CASE("the shading comparison runs per polluter and reports witnesses") {
  auto profiles = four_bidders();
  CheckResult r = check_secondary_shading(
      profiles, reduction_bids(), 4, make_grid(0, 10, 0.5, 4),
      SecondaryConfig{true, 0.5, false});
  json d = json::parse(r.details);
  REQUIRE(d.at("firms").size() == 4);
  for (const auto& f : d.at("firms")) {
    CHECK(f.contains("best_with_secondary"));
    CHECK(f.contains("best_without_secondary"));
    CHECK(f.contains("elementwise_leq"));
    CHECK(f.contains("price_leq"));
  }
}

TEST_CASE("an empty or disordered grid is rejected") {
  std::vector<ValuationProfile> profiles = {
      {"A", {7}, FirmKind::Polluter}, {"B", {5}, FirmKind::Polluter}};
  try {
    best_response("A", profiles, {}, 1, BidGrid{{}, 1}, false,
                  SecondaryConfig{});
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyGrid);
  }
  try {
    best_response("A", profiles, {}, 1, BidGrid{{2.0, 1.0}, 1}, false,
                  SecondaryConfig{});
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
  try {
    best_response("ghost", profiles, {}, 1, make_grid(0, 1, 1), false,
                  SecondaryConfig{});
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownFirmId);
  }
}
