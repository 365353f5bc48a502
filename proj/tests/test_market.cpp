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

#include <functional>

#include "ets/market.hpp"

using namespace ets;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("make_grid produces exact decimal points") {
  BidGrid g = make_grid(0.0, 10.0, 0.5, 4);
  REQUIRE(g.points.size() == 21);
  CHECK(g.points.front() == 0.0);
  CHECK(g.points[1] == 0.5);
  CHECK(g.points.back() == 10.0);
  CHECK(g.max_units == 4);

  BidGrid odd = make_grid(0.0, 1.0, 0.3);
  CHECK(odd.points.size() == 5);  // 0, .3, .6, .9, then the endpoint
  CHECK(odd.points.back() == 1.0);
  CHECK(odd.max_units == 1);
  for (size_t i = 1; i < odd.points.size(); ++i) {
    CHECK(odd.points[i] > odd.points[i - 1]);
  }

  CHECK(code_of([] { make_grid(0, 10, 0.0); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_grid(5, 4, 1.0); }) == Errc::InvalidArgument);
}

TEST_CASE("profile validation rejects malformed value vectors") {
  CHECK(code_of([] {
          validate_profile({"A", {1.0, 2.0}, FirmKind::Polluter}, 4);
        }) == Errc::NonMonotoneValues);
  CHECK(code_of([] {
          validate_profile({"A", {-1.0}, FirmKind::Polluter}, 4);
        }) == Errc::NegativeValue);
  CHECK(code_of([] {
          validate_profile({"A", {3, 2, 1}, FirmKind::Polluter}, 2);
        }) == Errc::TooManyUnits);
  CHECK(code_of([] {
          validate_profile({"s", {1.0}, FirmKind::Speculator}, 4);
        }) == Errc::SpeculatorNonzeroValue);

  ValuationProfile ok{"A", {5, 5, 2}, FirmKind::Polluter};
  CHECK(&validate_profile(ok, 3) == &ok);
  ValuationProfile spec{"s", {0, 0}, FirmKind::Speculator};
  CHECK_NOTHROW(validate_profile(spec, 2));
}

TEST_CASE("schedule validation mirrors profile rules") {
  CHECK(code_of([] { validate_schedule({"A", {1, 2}}, 4); }) ==
        Errc::NonMonotoneValues);
  CHECK(code_of([] { validate_schedule({"A", {4, 3, 2}}, 2); }) ==
        Errc::TooManyUnits);
  BidSchedule ok{"A", {4, 4, 1}};
  CHECK_NOTHROW(validate_schedule(ok, 3));
}

TEST_CASE("generated firm ids are zero padded to equal width") {
  auto three = polluter_ids(3);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == "F1");
  CHECK(three[2] == "F3");

  auto twelve = polluter_ids(12);
  CHECK(twelve[0] == "F01");
  CHECK(twelve[9] == "F10");
  CHECK(twelve[11] == "F12");
}

TEST_CASE("market validation catches inconsistent configs") {
  MarketConfig c;
  c.n = 1;
  CHECK(code_of([&] { validate_market(c); }) == Errc::ConfigError);

  c.n = 2;
  c.k = 0;
  CHECK(code_of([&] { validate_market(c); }) == Errc::ConfigError);

  c.k = 1;
  c.distribution = UniformValues{-1.0, 2.0};
  CHECK(code_of([&] { validate_market(c); }) == Errc::InvalidDistribution);

  c.distribution = DiscreteValues{{1.0, 2.0}, {0.4, 0.4}};
  CHECK(code_of([&] { validate_market(c); }) == Errc::InvalidDistribution);

  c.distribution = UniformValues{0.0, 1.0};
  c.speculator_present = true;  // a speculator needs two polluters beside it
  CHECK(code_of([&] { validate_market(c); }) == Errc::ConfigError);

  MarketConfig dup;
  dup.n = 2;
  dup.k = 1;
  dup.distribution = FixedProfiles{{{"A", {1.0}, FirmKind::Polluter},
                                    {"A", {2.0}, FirmKind::Polluter}}};
  CHECK(code_of([&] { validate_market(dup); }) == Errc::DuplicateFirmId);

  MarketConfig undeclared;
  undeclared.n = 2;
  undeclared.k = 1;
  undeclared.speculator_present = false;
  undeclared.distribution = FixedProfiles{{{"A", {1.0}, FirmKind::Polluter},
                                           {"s", {0.0}, FirmKind::Speculator}}};
  CHECK(code_of([&] { validate_market(undeclared); }) == Errc::ConfigError);
}

TEST_CASE("fixed profiles are returned verbatim, speculator appended on demand") {
  MarketConfig c;
  c.n = 3;
  c.k = 2;
  c.speculator_present = true;
  c.distribution = FixedProfiles{{{"B1", {9.0, 7.0}, FirmKind::Polluter},
                                  {"B2", {6.0, 2.0}, FirmKind::Polluter}}};
  RngStream stream(1);
  auto out = sample_profiles(c, stream);
  REQUIRE(out.size() == 3);
  CHECK(out[0].firm_id == "B1");
  CHECK(out[0].values == std::vector<Money>{9.0, 7.0});
  CHECK(out[2].firm_id == kSpeculatorId);
  CHECK(out[2].kind == FirmKind::Speculator);
  CHECK(out[2].values == std::vector<Money>{0.0, 0.0});
}

TEST_CASE("sampled profiles give each polluter one value across all units") {
  MarketConfig c;
  c.n = 3;
  c.k = 2;
  c.distribution = UniformValues{5.0, 5.0};  // degenerate: always 5
  RngStream stream(9);
  auto out = sample_profiles(c, stream);
  REQUIRE(out.size() == 3);
  CHECK(out[0].firm_id == "F1");
  CHECK(out[2].firm_id == "F3");
  for (const auto& p : out) {
    CHECK(p.values == std::vector<Money>{5.0, 5.0});
    CHECK(p.kind == FirmKind::Polluter);
  }
}

TEST_CASE("sampling is deterministic in the stream and varies across firms") {
  MarketConfig c;
  c.n = 4;
  c.k = 3;
  c.distribution = UniformValues{0.0, 10.0};
  RngStream s1(2026), s2(2026);
  auto a = sample_profiles(c, s1);
  auto b = sample_profiles(c, s2);
  CHECK(a == b);
  CHECK(a[0].values[0] != a[1].values[0]);
  // Constant marginal values within a firm's profile.
  for (const auto& p : a) {
    CHECK(p.values[0] == p.values[1]);
    CHECK(p.values[1] == p.values[2]);
  }
}

TEST_CASE("discrete sampling draws only listed values") {
  MarketConfig c;
  c.n = 2;
  c.k = 1;
  c.distribution = DiscreteValues{{1.0, 2.0}, {0.5, 0.5}};
  bool saw_one = false, saw_two = false;
  for (int seed = 0; seed < 40; ++seed) {
    RngStream s(seed);
    for (const auto& p : sample_profiles(c, s)) {
      REQUIRE((p.values[0] == 1.0 || p.values[0] == 2.0));
      if (p.values[0] == 1.0) saw_one = true;
      if (p.values[0] == 2.0) saw_two = true;
    }
  }
  CHECK(saw_one);
  CHECK(saw_two);
}

TEST_CASE("speculator slot replaces one generated polluter") {
  MarketConfig c;
  c.n = 3;
  c.k = 2;
  c.speculator_present = true;
  c.distribution = UniformValues{0.0, 1.0};
  RngStream s(4);
  auto out = sample_profiles(c, s);
  REQUIRE(out.size() == 3);
  CHECK(out[0].firm_id == "F1");
  CHECK(out[1].firm_id == "F2");
  CHECK(out[2].firm_id == kSpeculatorId);
  CHECK(out[2].values == std::vector<Money>{0.0, 0.0});
}
