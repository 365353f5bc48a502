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

#include "ets/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ets {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(Errc::ConfigError, path + ": " + message);
}

const json& field(const json& j, const std::string& path,
                  const std::string& key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

template <typename T>
T get_as(const json& j, const std::string& path, const char* type_name) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(path, std::string("expected ") + type_name);
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::vector<Money> get_money_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<Money> out;
  for (const auto& x : j) {
    if (!x.is_number()) fail(path, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ValuationProfile parse_profile(const json& j, const std::string& path) {
  ValuationProfile p;
  p.firm_id = get_as<std::string>(field(j, path, "firm"), path + ".firm",
                                  "a string");
  p.values = get_money_list(field(j, path, "values"), path + ".values");
  if (j.contains("speculator") && get_bool(j["speculator"],
                                           path + ".speculator")) {
    p.kind = FirmKind::Speculator;
  }
  return p;
}

json profile_json(const ValuationProfile& p) {
  return json{{"firm", p.firm_id},
              {"values", p.values},
              {"speculator", p.kind == FirmKind::Speculator}};
}

BidGrid parse_grid(const json& j, const std::string& path) {
  BidGrid grid;
  if (j.contains("points")) {
    grid.points = get_money_list(j["points"], path + ".points");
    grid.max_units = j.contains("max_units")
                         ? get_int(j["max_units"], path + ".max_units")
                         : 1;
  } else {
    Money lo = get_number(field(j, path, "lo"), path + ".lo");
    Money hi = get_number(field(j, path, "hi"), path + ".hi");
    Money step = get_number(field(j, path, "step"), path + ".step");
    int max_units = j.contains("max_units")
                        ? get_int(j["max_units"], path + ".max_units")
                        : 1;
    try {
      grid = make_grid(lo, hi, step, max_units);
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  for (size_t i = 1; i < grid.points.size(); ++i) {
    if (grid.points[i] <= grid.points[i - 1]) {
      fail(path + ".points", "grid must be strictly increasing");
    }
  }
  if (grid.points.empty()) fail(path + ".points", "grid must be non-empty");
  return grid;
}

json grid_json(const BidGrid& grid) {
  return json{{"points", grid.points}, {"max_units", grid.max_units}};
}

StrategySpec parse_strategy(const json& j, const std::string& path) {
  std::string type = get_as<std::string>(field(j, path, "type"),
                                         path + ".type", "a string");
  if (type == "truthful") {
    return make_truthful();
  }
  if (type == "shaded") {
    std::vector<double> factors;
    if (j.contains("factor")) {
      factors.push_back(get_number(j["factor"], path + ".factor"));
    } else {
      for (const auto& f : field(j, path, "factors")) {
        factors.push_back(get_number(f, path + ".factors"));
      }
    }
    bool clamp = j.contains("clamp") ? get_bool(j["clamp"], path + ".clamp")
                                     : true;
    for (double f : factors) {
      if (f < 0.0 || f > 1.0) fail(path + ".factors", "factor outside [0, 1]");
    }
    return make_shaded(std::move(factors), clamp);
  }
  if (type == "secondary_aware") {
    StrategySpec base = parse_strategy(field(j, path, "base"), path + ".base");
    double shade = j.contains("extra_shade")
                       ? get_number(j["extra_shade"], path + ".extra_shade")
                       : 0.0;
    if (shade < 0.0 || shade > 1.0) {
      fail(path + ".extra_shade", "extra_shade outside [0, 1]");
    }
    return make_secondary_aware(std::move(base), shade);
  }
  if (type == "speculator_grid") {
    BidGrid grid = parse_grid(field(j, path, "grid"), path + ".grid");
    int samples = j.contains("mc_samples")
                      ? get_int(j["mc_samples"], path + ".mc_samples")
                      : 200;
    if (samples < 1) fail(path + ".mc_samples", "mc_samples must be >= 1");
    int units = j.contains("units_demanded")
                    ? get_int(j["units_demanded"], path + ".units_demanded")
                    : 1;
    if (units < 1) fail(path + ".units_demanded", "must be >= 1");
    return make_speculator_grid(std::move(grid), samples, units);
  }
  if (type == "fixed_bids") {
    return make_fixed(get_money_list(field(j, path, "bids"), path + ".bids"));
  }
  fail(path + ".type", "unknown strategy type '" + type + "'");
}

json strategy_json(const StrategySpec& spec) {
  if (std::holds_alternative<Truthful>(spec.v)) {
    return json{{"type", "truthful"}};
  }
  if (const auto* s = std::get_if<Shaded>(&spec.v)) {
    return json{{"type", "shaded"}, {"factors", s->factors},
                {"clamp", s->clamp}};
  }
  if (const auto* s = std::get_if<SecondaryAware>(&spec.v)) {
    return json{{"type", "secondary_aware"},
                {"base", s->base ? strategy_json(*s->base) : json()},
                {"extra_shade", s->extra_shade}};
  }
  if (const auto* s = std::get_if<SpeculatorGrid>(&spec.v)) {
    return json{{"type", "speculator_grid"},
                {"grid", grid_json(s->grid)},
                {"mc_samples", s->mc_samples},
                {"units_demanded", s->units_demanded}};
  }
  const auto& f = std::get<FixedBids>(spec.v);
  return json{{"type", "fixed_bids"}, {"bids", f.bids}};
}

ValueDistribution parse_distribution(const json& j, const std::string& path) {
  std::string type = get_as<std::string>(field(j, path, "type"),
                                         path + ".type", "a string");
  if (type == "uniform") {
    UniformValues u;
    u.lo = get_number(field(j, path, "lo"), path + ".lo");
    u.hi = get_number(field(j, path, "hi"), path + ".hi");
    return u;
  }
  if (type == "discrete") {
    DiscreteValues d;
    d.values = get_money_list(field(j, path, "values"), path + ".values");
    for (const auto& p : field(j, path, "probabilities")) {
      d.probabilities.push_back(get_number(p, path + ".probabilities"));
    }
    return d;
  }
  if (type == "fixed") {
    FixedProfiles f;
    const json& arr = field(j, path, "profiles");
    if (!arr.is_array()) fail(path + ".profiles", "expected an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      f.profiles.push_back(parse_profile(
          arr[i], path + ".profiles[" + std::to_string(i) + "]"));
    }
    return f;
  }
  fail(path + ".type", "unknown distribution type '" + type + "'");
}

json distribution_json(const ValueDistribution& dist) {
  if (const auto* u = std::get_if<UniformValues>(&dist)) {
    return json{{"type", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
  }
  if (const auto* d = std::get_if<DiscreteValues>(&dist)) {
    return json{{"type", "discrete"},
                {"values", d->values},
                {"probabilities", d->probabilities}};
  }
  const auto& f = std::get<FixedProfiles>(dist);
  json profiles = json::array();
  for (const auto& p : f.profiles) profiles.push_back(profile_json(p));
  return json{{"type", "fixed"}, {"profiles", profiles}};
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, std::string("config: ") + e.what());
  }

  ScenarioConfig c;
  const json& market = field(j, "config", "market");
  c.market.n = get_int(field(market, "market", "n"), "market.n");
  c.market.k = get_int(field(market, "market", "k"), "market.k");
  c.market.distribution = parse_distribution(
      field(market, "market", "distribution"), "market.distribution");
  if (market.contains("speculator_present")) {
    c.market.speculator_present =
        get_bool(market["speculator_present"], "market.speculator_present");
  }
  if (market.contains("seed")) {
    if (!market["seed"].is_number_unsigned() &&
        !market["seed"].is_number_integer()) {
      fail("market.seed", "expected an integer");
    }
    c.market.seed = market["seed"].get<std::uint64_t>();
  }

  if (j.contains("strategies")) {
    const json& strategies = j["strategies"];
    if (!strategies.is_object()) fail("strategies", "expected an object");
    for (const auto& [id, spec] : strategies.items()) {
      c.strategies[id] = parse_strategy(spec, "strategies." + id);
    }
  }

  if (j.contains("secondary")) {
    const json& s = j["secondary"];
    if (s.contains("enabled")) {
      c.secondary.enabled = get_bool(s["enabled"], "secondary.enabled");
    }
    if (s.contains("beta")) {
      c.secondary.beta = get_number(s["beta"], "secondary.beta");
    }
    if (s.contains("cost_floor")) {
      c.secondary.cost_floor = get_bool(s["cost_floor"],
                                        "secondary.cost_floor");
    }
  }

  if (j.contains("banking")) {
    const json& b = j["banking"];
    if (b.contains("enabled")) {
      c.banking.enabled = get_bool(b["enabled"], "banking.enabled");
    }
    if (b.contains("cap_per_firm")) {
      c.banking.cap_per_firm = get_int(b["cap_per_firm"],
                                       "banking.cap_per_firm");
    }
  }

  if (j.contains("rounds")) c.rounds = get_int(j["rounds"], "rounds");
  if (j.contains("replications")) {
    c.replications = get_int(j["replications"], "replications");
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    if (o.contains("dir")) {
      c.output.dir = get_as<std::string>(o["dir"], "output.dir", "a string");
    }
    if (o.contains("formats")) {
      c.output.formats.clear();
      for (const auto& f : o["formats"]) {
        c.output.formats.push_back(
            get_as<std::string>(f, "output.formats", "a string"));
      }
    }
  }

  if (j.contains("verify")) {
    const json& v = j["verify"];
    auto opt_int = [&](const char* key, int& slot) {
      if (v.contains(key)) slot = get_int(v[key], std::string("verify.") + key);
    };
    opt_int("efficiency_instances", c.verify.efficiency_instances);
    opt_int("price_monotonicity_instances",
            c.verify.price_monotonicity_instances);
    opt_int("shading_instances", c.verify.shading_instances);
    opt_int("remark_instances", c.verify.remark_instances);
    opt_int("n_min", c.verify.n_min);
    opt_int("n_max", c.verify.n_max);
    opt_int("k_min", c.verify.k_min);
    opt_int("k_max", c.verify.k_max);
    if (v.contains("value_lo")) {
      c.verify.value_lo = get_number(v["value_lo"], "verify.value_lo");
    }
    if (v.contains("value_hi")) {
      c.verify.value_hi = get_number(v["value_hi"], "verify.value_hi");
    }
    if (v.contains("grid_step")) {
      c.verify.grid_step = get_number(v["grid_step"], "verify.grid_step");
    }
    if (v.contains("enumeration_cap")) {
      c.verify.enumeration_cap = v["enumeration_cap"].get<std::uint64_t>();
    }
  }

  validate_scenario(c);
  return c;
}

std::string serialize(const ScenarioConfig& c) {
  json strategies = json::object();
  for (const auto& [id, spec] : c.strategies) {
    strategies[id] = strategy_json(spec);
  }
  json j{
      {"market",
       {{"n", c.market.n},
        {"k", c.market.k},
        {"distribution", distribution_json(c.market.distribution)},
        {"speculator_present", c.market.speculator_present},
        {"seed", c.market.seed}}},
      {"strategies", strategies},
      {"secondary",
       {{"enabled", c.secondary.enabled},
        {"beta", c.secondary.beta},
        {"cost_floor", c.secondary.cost_floor}}},
      {"banking",
       {{"enabled", c.banking.enabled},
        {"cap_per_firm", c.banking.cap_per_firm}}},
      {"rounds", c.rounds},
      {"replications", c.replications},
      {"output", {{"dir", c.output.dir}, {"formats", c.output.formats}}},
      {"verify",
       {{"efficiency_instances", c.verify.efficiency_instances},
        {"price_monotonicity_instances",
         c.verify.price_monotonicity_instances},
        {"shading_instances", c.verify.shading_instances},
        {"remark_instances", c.verify.remark_instances},
        {"n_min", c.verify.n_min},
        {"n_max", c.verify.n_max},
        {"k_min", c.verify.k_min},
        {"k_max", c.verify.k_max},
        {"value_lo", c.verify.value_lo},
        {"value_hi", c.verify.value_hi},
        {"grid_step", c.verify.grid_step},
        {"enumeration_cap", c.verify.enumeration_cap}}}};
  return j.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::ConfigError, "cannot open config file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

void validate_scenario(const ScenarioConfig& c) {
  validate_market(c.market);
  if (c.rounds < 1) {
    throw Error(Errc::ConfigError, "rounds must be >= 1");
  }
  if (c.replications < 1) {
    throw Error(Errc::ConfigError, "replications must be >= 1");
  }
  if (c.secondary.enabled &&
      (!(c.secondary.beta > 0.0) || !(c.secondary.beta < 1.0))) {
    throw Error(Errc::ConfigError,
                "secondary.beta must lie strictly inside (0, 1)");
  }
  if (c.banking.enabled && c.banking.cap_per_firm < 0) {
    throw Error(Errc::ConfigError, "banking.cap_per_firm must be >= 0");
  }
  if (c.verify.n_min < 2 || c.verify.n_max < c.verify.n_min ||
      c.verify.k_min < 1 || c.verify.k_max < c.verify.k_min) {
    throw Error(Errc::ConfigError, "verify instance ranges are inconsistent");
  }
  if (!(c.verify.value_hi >= c.verify.value_lo) ||
      c.verify.value_lo < 0.0 || !(c.verify.grid_step > 0.0)) {
    throw Error(Errc::ConfigError, "verify value range is inconsistent");
  }

  for (const auto& f : c.output.formats) {
    if (f != "csv" && f != "json") {
      throw Error(Errc::ConfigError, "output.formats: unknown format " + f);
    }
  }

  std::set<FirmId> ids;
  if (const auto* fixed = std::get_if<FixedProfiles>(&c.market.distribution)) {
    for (const auto& p : fixed->profiles) ids.insert(p.firm_id);
    if (c.market.speculator_present) ids.insert(kSpeculatorId);
  } else {
    int polluters = c.market.n - (c.market.speculator_present ? 1 : 0);
    for (const auto& id : polluter_ids(polluters)) ids.insert(id);
    if (c.market.speculator_present) ids.insert(kSpeculatorId);
  }
  for (const auto& [id, spec] : c.strategies) {
    if (id != "default" && !ids.count(id)) {
      throw Error(Errc::ConfigError,
                  "strategies." + id + ": no such firm in this market");
    }
  }
}

}  // namespace ets
