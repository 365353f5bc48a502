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

#include <string>

#include "doctest.h"
#include "ets/scenario.hpp"

using namespace ets;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
    return e.what();
  }
  FAIL("expected a config error for: " << text);
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("a minimal config picks up every default") {
  ScenarioConfig parsed = parse_scenario(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}}
  })");
  CHECK(parsed == ScenarioConfig{});
}

TEST_CASE("a fully populated config round-trips through its canonical form") {
  ScenarioConfig c;
  c.market.n = 3;
  c.market.k = 2;
  c.market.speculator_present = true;
  c.market.seed = 99;
  c.market.distribution = FixedProfiles{{
      {"B1", {10, 9}, FirmKind::Polluter},
      {"B2", {8, 7}, FirmKind::Polluter},
  }};
  c.strategies["B1"] = make_shaded({0.9, 0.8}, false);
  c.strategies["B2"] = make_secondary_aware(make_truthful(), 0.25);
  c.strategies["s"] = make_speculator_grid(make_grid(0, 10, 0.5, 2), 50, 2);
  c.strategies["default"] = make_fixed({2, 1});
  c.secondary = SecondaryConfig{true, 0.25, true};
  c.banking.enabled = true;
  c.banking.cap_per_firm = 3;
  c.rounds = 5;
  c.replications = 7;
  c.output.dir = "results";
  c.output.formats = {"json"};
  c.verify.efficiency_instances = 10;
  c.verify.n_max = 3;
  c.verify.grid_step = 0.25;
  c.verify.enumeration_cap = 12345;

  std::string text = serialize(c);
  ScenarioConfig parsed = parse_scenario(text);
  CHECK(parsed == c);
  CHECK(serialize(parsed) == text);
}

TEST_CASE("a grid parses from explicit points or a lo/hi/step recipe") {
  auto config_text = [](const std::string& grid) {
    std::string text = R"({
      "market": {"n": 3, "k": 2, "speculator_present": true,
                 "distribution": {"type": "uniform", "lo": 0, "hi": 10}},
      "strategies": {"s": {"type": "speculator_grid", "grid": %s}}
    })";
    text.replace(text.find("%s"), 2, grid);
    return text;
  };
  ScenarioConfig stepped = parse_scenario(
      config_text(R"({"lo": 0, "hi": 2, "step": 0.5, "max_units": 2})"));
  ScenarioConfig listed = parse_scenario(
      config_text(R"({"points": [0, 0.5, 1, 1.5, 2], "max_units": 2})"));
  CHECK(stepped.strategies.at("s") == listed.strategies.at("s"));

  std::string err = parse_error(config_text(R"({"points": [1, 1]})"));
  CHECK(contains(err, "strictly increasing"));
}

TEST_CASE("shaded strategies accept a scalar factor") {
  ScenarioConfig parsed = parse_scenario(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "strategies": {"default": {"type": "shaded", "factor": 0.7}}
  })");
  CHECK(parsed.strategies.at("default") == make_shaded({0.7}));
}

TEST_CASE("malformed configs fail with a field path") {
  CHECK(contains(parse_error("this is not json"), "config:"));
  CHECK(contains(parse_error(R"({"rounds": 3})"), "config.market"));

  CHECK(contains(parse_error(R"({
    "market": {"n": "two", "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}}
  })"), "market.n"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1, "distribution": {"type": "poisson"}}
  })"), "unknown distribution type 'poisson'"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "strategies": {"default": {"type": "bold"}}
  })"), "unknown strategy type 'bold'"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "strategies": {"default": {"type": "shaded", "factor": 1.5}}
  })"), "factor outside [0, 1]"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "strategies": {"F9": {"type": "truthful"}}
  })"), "strategies.F9: no such firm in this market"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "secondary": {"enabled": true, "beta": 1.5}
  })"), "secondary.beta"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "rounds": 0
  })"), "rounds must be >= 1"));

  CHECK(contains(parse_error(R"({
    "market": {"n": 2, "k": 1,
               "distribution": {"type": "uniform", "lo": 0, "hi": 1}},
    "output": {"formats": ["xml"]}
  })"), "output.formats: unknown format xml"));
}

TEST_CASE("strategy keys may name generated polluters or the speculator") {
  ScenarioConfig c;
  c.market.n = 3;
  c.market.k = 2;
  c.market.speculator_present = true;
  c.market.distribution = UniformValues{0.0, 10.0};
  c.strategies["F1"] = make_truthful();
  c.strategies["F2"] = make_shaded({0.8});
  c.strategies["s"] = make_fixed({5});
  CHECK_NOTHROW(validate_scenario(c));

  c.strategies["F3"] = make_truthful();  // the speculator took that slot
  CHECK_THROWS_AS(validate_scenario(c), Error);
}

TEST_CASE("loading a missing config file reports the path") {
  try {
    load_scenario("/nonexistent/ets-sim.json");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
    CHECK(contains(e.what(), "cannot open config file"));
    CHECK(contains(e.what(), "/nonexistent/ets-sim.json"));
  }
}
