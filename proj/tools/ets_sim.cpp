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

#include <atomic>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ets/oracle.hpp"
#include "ets/report.hpp"
#include "ets/scenario.hpp"
#include "ets/simulation.hpp"
#include "ets/strategy.hpp"

namespace {

using namespace ets;
using nlohmann::json;

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string output_dir;
  bool output_dir_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
};

// ---------------------------------------------------------------------------
// Golden four-bidder example: two-unit demands, four permits.

std::vector<ValuationProfile> example_profiles(bool with_speculator) {
  std::vector<ValuationProfile> out = {
      {"B1", {10, 9}, FirmKind::Polluter},
      {"B2", {8, 7}, FirmKind::Polluter},
      {"B3", {6, 5}, FirmKind::Polluter},
      {"B4", {4, 3}, FirmKind::Polluter},
  };
  if (with_speculator) {
    out.push_back({"s", {0, 0}, FirmKind::Speculator});
  }
  return out;
}

std::vector<BidSchedule> example_bids(int variant) {
  switch (variant) {
    case 0:  // truthful
      return {{"B1", {10, 9}}, {"B2", {8, 7}}, {"B3", {6, 5}}, {"B4", {4, 3}}};
    case 1:  // demand reduction
      return {{"B1", {10, 7}}, {"B2", {8, 5}}, {"B3", {6, 4}}, {"B4", {4, 2}}};
    default:  // stronger demand reduction
      return {{"B1", {10, 5}}, {"B2", {8, 4}}, {"B3", {6, 3}}, {"B4", {4, 2}}};
  }
}

struct GoldenRow {
  std::string label;
  std::vector<BidSchedule> bids;
  bool with_speculator;
  Money expected_price;
  std::vector<Money> expected_payoffs;  // B1..B4
  Money expected_surplus;
  Money expected_revenue;
};

int cmd_replay_example() {
  const int k = 4;
  std::vector<GoldenRow> rows = {
      {"truthful", example_bids(0), false, 6, {7, 3, 0, 0}, 10, 24},
      {"demand reduction", example_bids(1), false, 5, {9, 3, 1, 0}, 13, 20},
      {"demand reduction + s@6.5",
       [] {
         auto b = example_bids(1);
         b.push_back({"s", {6.5}});
         return b;
       }(),
       true, 6, {7, 2, 0, 0}, 9, 24},
      {"higher demand reduction", example_bids(2), false, 4, {11, 4, 2, 0},
       17, 16},
      {"higher demand reduction + s@6",
       [] {
         auto b = example_bids(2);
         b.push_back({"s", {6}});
         return b;
       }(),
       true, 5, {5, 3, 1, 0}, 9, 20},
  };

  bool ok = true;
  std::cout << std::left << std::setw(32) << "scenario" << std::right
            << std::setw(6) << "p*" << std::setw(10) << "B1" << std::setw(6)
            << "B2" << std::setw(6) << "B3" << std::setw(6) << "B4"
            << std::setw(8) << "Surp." << std::setw(7) << "Rev." << '\n';

  std::vector<AuctionOutcome> outcomes;
  for (const auto& row : rows) {
    auto profiles = example_profiles(row.with_speculator);
    AuctionOutcome outcome = clear_auction(row.bids, profiles, k);
    outcomes.push_back(outcome);

    Money surplus = 0.0;
    std::vector<Money> payoffs;
    for (const char* id : {"B1", "B2", "B3", "B4"}) {
      Money p = outcome.per_firm_surplus.at(id);
      payoffs.push_back(p);
      surplus += p;
    }

    std::cout << std::left << std::setw(32) << row.label << std::right
              << std::setw(6) << format_number(outcome.clearing_price);
    std::cout << std::setw(10) << format_number(payoffs[0]);
    for (int i = 1; i < 4; ++i) {
      std::cout << std::setw(6) << format_number(payoffs[i]);
    }
    std::cout << std::setw(8) << format_number(surplus) << std::setw(7)
              << format_number(outcome.revenue) << '\n';

    auto mismatch = [&](const std::string& what, Money got, Money want) {
      std::cout << "  MISMATCH " << row.label << " " << what << ": got "
                << format_number(got) << ", expected " << format_number(want)
                << '\n';
      ok = false;
    };
    if (outcome.clearing_price != row.expected_price) {
      mismatch("clearing price", outcome.clearing_price, row.expected_price);
    }
    for (int i = 0; i < 4; ++i) {
      if (payoffs[i] != row.expected_payoffs[i]) {
        mismatch("payoff B" + std::to_string(i + 1), payoffs[i],
                 row.expected_payoffs[i]);
      }
    }
    if (surplus != row.expected_surplus) {
      mismatch("bidder surplus", surplus, row.expected_surplus);
    }
    if (outcome.revenue != row.expected_revenue) {
      mismatch("revenue", outcome.revenue, row.expected_revenue);
    }
  }

  // Resale epilogues for the two speculator rows, priced at beta = 1/2 with
  // the seller's acquisition cost as a floor.
  SecondaryConfig resale{true, 0.5, true};
  {
    SecondaryResult sec = run_secondary(outcomes[2].allocation,
                                        example_profiles(true), resale,
                                        outcomes[2].clearing_price);
    const TradeRecord& t = sec.trades.at(0);
    Money combined = (t.buyer_value - t.price) + t.rent;
    std::cout << "resale after row 3: " << t.seller << " -> " << t.buyer
              << " at " << format_number(t.price) << ", combined netted gain "
              << format_number(combined) << '\n';
    if (!(t.seller == "s" && t.buyer == "B2" && t.price == 6.5 &&
          combined == 1.0 && sec.trades.size() == 1)) {
      std::cout << "  MISMATCH row 3 resale: expected single trade s -> B2 at "
                   "6.5 with combined gain 1\n";
      ok = false;
    }
  }
  {
    SecondaryResult sec = run_secondary(outcomes[4].allocation,
                                        example_profiles(true), resale,
                                        outcomes[4].clearing_price);
    const TradeRecord& t = sec.trades.at(0);
    Money netted = (t.buyer_value - t.price) + t.rent;
    Money value_gain = t.buyer_value - t.seller_value;
    std::cout << "resale after row 5: " << t.seller << " -> " << t.buyer
              << " at " << format_number(t.price) << ", netted gain "
              << format_number(netted) << ", held-value gain "
              << format_number(value_gain) << '\n';
    if (!(t.seller == "s" && t.buyer == "B1" && t.price == 7.0 &&
          netted == 4.0 && value_gain == 9.0)) {
      std::cout << "  MISMATCH row 5 resale: expected first trade s -> B1 at "
                   "7 with netted gain 4 and held-value gain 9\n";
      ok = false;
    }
  }

  std::cout << (ok ? "replay-example: all values match\n"
                   : "replay-example: MISMATCH\n");
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

ScenarioConfig load_with_overrides(const std::string& path,
                                   const GlobalOptions& opts) {
  ScenarioConfig config = load_scenario(path);
  if (opts.seed_set) config.market.seed = opts.seed;
  if (opts.output_dir_set) config.output.dir = opts.output_dir;
  return config;
}

bool wants_format(const ScenarioConfig& config, const std::string& format) {
  for (const auto& f : config.output.formats) {
    if (f == format) return true;
  }
  return false;
}

int cmd_run(const std::string& config_path, const GlobalOptions& opts) {
  ScenarioConfig config = load_with_overrides(config_path, opts);
  SimulationResult result = run_simulation(config, opts.threads);

  fs::create_directories(config.output.dir);
  fs::path dir(config.output.dir);
  if (wants_format(config, "csv")) {
    write_file((dir / "rounds.csv").string(), rounds_csv(result));
    write_file((dir / "trades.csv").string(), trades_csv(result));
  }
  if (wants_format(config, "json")) {
    write_file((dir / "summary.json").string(), summary_json(config, result));
  }

  const auto& price = result.aggregates.at("clearing_price");
  const auto& revenue = result.aggregates.at("revenue");
  std::cout << "run: " << config.replications << " replication(s) x "
            << config.rounds << " round(s), mean clearing price "
            << format_number(price.mean) << ", mean revenue "
            << format_number(revenue.mean) << "\nwrote "
            << (dir / "").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// Verification campaigns.

std::vector<ValuationProfile> random_profiles(RngStream& stream, int n, int k,
                                              Money lo, Money hi) {
  std::vector<ValuationProfile> out;
  auto ids = polluter_ids(n);
  for (int i = 0; i < n; ++i) {
    RngStream firm = stream.derive(ids[i]);
    int len = 1 + static_cast<int>(firm.next_below(k));
    std::vector<Money> values;
    for (int u = 0; u < len; ++u) values.push_back(firm.uniform(lo, hi));
    std::sort(values.begin(), values.end(), std::greater<>());
    out.push_back({ids[i], std::move(values), FirmKind::Polluter});
  }
  return out;
}

// The first firm always bids on all k units so the auction is never
// undersubscribed; with fewer than k competing bids everyone wins at the
// reserve and a speculator entry cannot move the price.
std::vector<BidSchedule> random_schedules(RngStream& stream, int n, int k,
                                          Money lo, Money hi) {
  std::vector<BidSchedule> out;
  auto ids = polluter_ids(n);
  for (int i = 0; i < n; ++i) {
    RngStream firm = stream.derive(ids[i]);
    int len = i == 0 ? k : 1 + static_cast<int>(firm.next_below(k));
    std::vector<Money> bids;
    for (int u = 0; u < len; ++u) bids.push_back(firm.uniform(lo, hi));
    std::sort(bids.begin(), bids.end(), std::greater<>());
    out.push_back({ids[i], std::move(bids)});
  }
  return out;
}

std::vector<CheckResult> run_family(
    int count, int threads,
    const std::function<CheckResult(int)>& instance) {
  std::vector<CheckResult> out(count);
  auto guarded = [&](int i) {
    try {
      out[i] = instance(i);
    } catch (const std::exception& e) {
      out[i].name = "instance_error";
      out[i].pass = false;
      out[i].details = json{{"instance", i}, {"error", e.what()}}.dump();
    }
  };
  int workers = std::clamp(threads, 1, std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) guarded(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < count; i += workers) guarded(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

// Collapses instance results into one family-level result.
CheckResult summarize_family(const std::string& name,
                             const std::vector<CheckResult>& results,
                             bool gating, json extra = json::object()) {
  int passed = 0;
  json witnesses = json::array();
  for (const auto& r : results) {
    if (r.pass) {
      ++passed;
    } else if (witnesses.size() < 25) {
      witnesses.push_back(json::parse(r.details));
    }
  }
  CheckResult out;
  out.name = name;
  out.pass = passed == static_cast<int>(results.size());
  json details{{"instances", results.size()},
               {"passed", passed},
               {"failed", results.size() - passed},
               {"gating", gating},
               {"witnesses", witnesses}};
  for (auto& [key, value] : extra.items()) details[key] = value;
  out.details = details.dump();
  return out;
}

void draw_instance_shape(RngStream& stream, const VerifyConfig& vc, int* n,
                         int* k) {
  *n = vc.n_min +
       static_cast<int>(stream.next_below(vc.n_max - vc.n_min + 1));
  *k = vc.k_min +
       static_cast<int>(stream.next_below(vc.k_max - vc.k_min + 1));
}

CheckResult verify_prop2(const VerifyConfig& vc, const RngStream& root,
                         int threads) {
  auto results = run_family(vc.efficiency_instances, threads, [&](int i) {
    RngStream stream = root.derive("efficiency").derive(
        static_cast<std::uint64_t>(i));
    int n, k;
    draw_instance_shape(stream, vc, &n, &k);
    auto profiles = random_profiles(stream, n, k, vc.value_lo, vc.value_hi);
    return check_efficiency_equivalence(profiles, k, vc.enumeration_cap);
  });
  return summarize_family("prop2", results, true);
}

CheckResult verify_prop3(const VerifyConfig& vc, const RngStream& root,
                         int threads) {
  std::atomic<int> inefficient{0};
  auto results = run_family(vc.efficiency_instances, threads, [&](int i) {
    RngStream stream = root.derive("resale").derive(
        static_cast<std::uint64_t>(i));
    int n, k;
    draw_instance_shape(stream, vc, &n, &k);
    auto profiles = random_profiles(stream, n, k, vc.value_lo, vc.value_hi);

    // Demand-reducing bids, plus a speculator entry on half the instances,
    // to knock the auction off the efficient allocation.
    std::vector<BidSchedule> schedules;
    for (const auto& p : profiles) {
      std::vector<double> factors;
      int len = p.demand();
      for (int u = 0; u < len; ++u) {
        factors.push_back(
            len == 1 ? 1.0 : 1.0 - 0.5 * u / static_cast<double>(len - 1));
      }
      schedules.push_back(shaded_schedule(p, factors, true));
    }
    auto all_profiles = profiles;
    if (stream.next_below(2) == 1) {
      RngStream spec = stream.derive("speculator");
      schedules.push_back({kSpeculatorId,
                           {spec.uniform(vc.value_lo, vc.value_hi)}});
      ValuationProfile sp;
      sp.firm_id = kSpeculatorId;
      sp.kind = FirmKind::Speculator;
      sp.values.assign(k, 0.0);
      all_profiles.push_back(std::move(sp));
    }

    AuctionOutcome outcome = clear_auction(schedules, all_profiles, k);
    EnumerationResult en = enumerate_allocations_max_surplus(
        all_profiles, k, vc.enumeration_cap);
    Money auction_surplus = total_surplus(outcome.allocation, all_profiles);

    CheckResult out;
    out.name = "resale_restores_efficiency";
    if (!money::lt(auction_surplus, en.max_surplus)) {
      out.pass = true;
      out.details = json{{"inefficient", false}}.dump();
      return out;
    }
    ++inefficient;
    SecondaryResult sec =
        run_secondary(outcome.allocation, all_profiles, 0.5);
    Money final_surplus = total_surplus(sec.final_allocation, all_profiles);
    bool restored = money::eq(final_surplus, en.max_surplus);
    bool rent_positive = money::gt(sec.total_rent, 0.0);
    out.pass = restored && rent_positive;
    out.details = json{{"inefficient", true},
                       {"k", k},
                       {"auction_surplus", auction_surplus},
                       {"max_surplus", en.max_surplus},
                       {"final_surplus", final_surplus},
                       {"total_rent", sec.total_rent},
                       {"trades", sec.trades.size()},
                       {"restored", restored},
                       {"rent_positive", rent_positive}}
                      .dump();
    return out;
  });
  return summarize_family("prop3", results, true,
                          json{{"inefficient_instances", inefficient.load()}});
}

CheckResult verify_prop4(const VerifyConfig& vc, const RngStream& root,
                         int threads) {
  // Two pinned rows from the worked example, then the random campaign.
  std::vector<CheckResult> results;
  {
    auto strict_pass = [](CheckResult r) {
      json d = json::parse(r.details);
      bool won = d.at("speculator_won").get<bool>();
      bool strict = d.at("strict").get<bool>();
      r.pass = r.pass && (!won || strict);
      return r;
    };
    results.push_back(strict_pass(check_speculator_price_monotonicity(
        example_bids(1), {"s", {6.5}}, 4)));
    results.push_back(strict_pass(check_speculator_price_monotonicity(
        example_bids(2), {"s", {6}}, 4)));
  }
  auto campaign = run_family(vc.price_monotonicity_instances, threads,
                             [&](int i) {
    RngStream stream = root.derive("price").derive(
        static_cast<std::uint64_t>(i));
    int n, k;
    draw_instance_shape(stream, vc, &n, &k);
    auto schedules = random_schedules(stream, n, k, vc.value_lo, vc.value_hi);
    RngStream spec = stream.derive("speculator");
    BidSchedule spec_schedule{kSpeculatorId,
                              {spec.uniform(vc.value_lo, vc.value_hi)}};
    CheckResult r =
        check_speculator_price_monotonicity(schedules, spec_schedule, k);
    json d = json::parse(r.details);
    bool won = d.at("speculator_won").get<bool>();
    bool strict = d.at("strict").get<bool>();
    r.pass = r.pass && (!won || strict);
    return r;
  });
  results.insert(results.end(), campaign.begin(), campaign.end());
  return summarize_family("prop4", results, true);
}

CheckResult verify_remark(const VerifyConfig& vc, const RngStream& root,
                          int threads) {
  SecondaryConfig resale{true, 0.5, true};
  std::vector<CheckResult> results;
  results.push_back(check_remark_zero_profit(
      example_profiles(false), 4, make_grid(0, 10, 0.5, 4), resale,
      vc.enumeration_cap));
  auto campaign = run_family(vc.remark_instances, threads, [&](int i) {
    RngStream stream = root.derive("remark").derive(
        static_cast<std::uint64_t>(i));
    int n, k;
    draw_instance_shape(stream, vc, &n, &k);
    auto profiles = random_profiles(stream, n, k, vc.value_lo, vc.value_hi);
    BidGrid grid = make_grid(vc.value_lo, vc.value_hi, vc.grid_step, k);
    return check_remark_zero_profit(profiles, k, grid, resale,
                                    vc.enumeration_cap);
  });
  results.insert(results.end(), campaign.begin(), campaign.end());
  return summarize_family("remark", results, true);
}

CheckResult verify_prop1(const VerifyConfig& vc, const RngStream& root,
                         int threads) {
  SecondaryConfig resale{true, 0.5, false};
  std::vector<CheckResult> results;
  results.push_back(check_secondary_shading(
      example_profiles(false), example_bids(1), 4, make_grid(0, 10, 0.5, 4),
      resale, vc.enumeration_cap));
  auto campaign = run_family(vc.shading_instances, threads, [&](int i) {
    RngStream stream = root.derive("shading").derive(
        static_cast<std::uint64_t>(i));
    int n = 3, k = 2;
    auto profiles = random_profiles(stream, n, k, vc.value_lo, vc.value_hi);
    std::vector<BidSchedule> baseline;
    for (const auto& p : profiles) baseline.push_back(truthful_schedule(p));
    BidGrid grid = make_grid(vc.value_lo, vc.value_hi, 1.0, k);
    return check_secondary_shading(profiles, baseline, k, grid, resale,
                                   vc.enumeration_cap);
  });
  results.insert(results.end(), campaign.begin(), campaign.end());

  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  double rate = results.empty() ? 1.0
                                : static_cast<double>(passed) / results.size();
  // Reported, not gating: counterexamples are findings about where the
  // shading prediction holds, and they belong in the witness log.
  CheckResult out = summarize_family(
      "prop1", results, false,
      json{{"pass_rate", rate},
           {"note", "best-response shading comparison; counterexamples are "
                    "reported, not suppressed"}});
  out.pass = true;
  return out;
}

int cmd_verify(const std::string& config_path,
               const std::vector<std::string>& checks,
               const GlobalOptions& opts) {
  ScenarioConfig config = load_with_overrides(config_path, opts);
  const VerifyConfig& vc = config.verify;
  RngStream root = RngStream(config.market.seed).derive("verify");

  std::vector<std::string> selected = checks;
  if (selected.empty()) {
    selected = {"prop1", "prop2", "prop3", "prop4", "remark"};
  }

  std::vector<CheckResult> families;
  for (const auto& name : selected) {
    if (name == "prop1") {
      families.push_back(verify_prop1(vc, root, opts.threads));
    } else if (name == "prop2") {
      families.push_back(verify_prop2(vc, root, opts.threads));
    } else if (name == "prop3") {
      families.push_back(verify_prop3(vc, root, opts.threads));
    } else if (name == "prop4") {
      families.push_back(verify_prop4(vc, root, opts.threads));
    } else if (name == "remark") {
      families.push_back(verify_remark(vc, root, opts.threads));
    } else {
      throw Error(Errc::ConfigError,
                  "--checks: unknown check '" + name +
                      "' (expected prop1..prop4 or remark)");
    }
  }

  fs::create_directories(config.output.dir);
  fs::path dir(config.output.dir);
  write_file((dir / "witnesses.json").string(), witnesses_json(families));

  bool failed = false;
  for (const auto& f : families) {
    json d = json::parse(f.details);
    std::cout << f.name << ": " << d.at("passed").get<int>() << "/"
              << d.at("instances").get<int>() << " instances";
    if (f.name == "prop1") {
      std::cout << " (pass rate " << d.at("pass_rate").get<double>()
                << ", reported only)";
    }
    std::cout << (f.pass ? " [ok]" : " [FAIL]") << '\n';
    if (!f.pass) failed = true;
  }
  std::cout << "wrote " << (dir / "witnesses.json").string() << '\n';
  return failed ? 4 : 0;
}

// ---------------------------------------------------------------------------

void apply_sweep_value(ScenarioConfig& config, const std::string& param,
                       const std::string& raw) {
  auto as_double = [&](const std::string& s) {
    try {
      size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(Errc::ConfigError, "--values: '" + s + "' is not a number");
    }
  };

  if (param == "beta") {
    config.secondary.beta = as_double(raw);
    return;
  }
  if (param == "extra_shade") {
    double shade = as_double(raw);
    if (config.strategies.find("default") == config.strategies.end()) {
      config.strategies["default"] = make_truthful();
    }
    for (auto& [id, spec] : config.strategies) {
      if (std::holds_alternative<SpeculatorGrid>(spec.v)) continue;
      if (auto* aware = std::get_if<SecondaryAware>(&spec.v)) {
        aware->extra_shade = shade;
      } else {
        spec = make_secondary_aware(std::move(spec), shade);
      }
    }
    return;
  }
  if (param == "speculator_bid") {
    if (!config.market.speculator_present) {
      config.market.speculator_present = true;
      if (std::holds_alternative<FixedProfiles>(config.market.distribution)) {
        config.market.n += 1;  // fixed polluter list stays as-is, "s" joins
      }
    }
    config.strategies[kSpeculatorId] = make_fixed({as_double(raw)});
    return;
  }
  if (param == "k") {
    config.market.k = static_cast<int>(as_double(raw));
    return;
  }
  if (param == "banking_cap") {
    config.banking.enabled = true;
    config.banking.cap_per_firm = static_cast<int>(as_double(raw));
    return;
  }
  throw Error(Errc::ConfigError,
              "--param must be one of beta, extra_shade, speculator_bid, k, "
              "banking_cap");
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<std::string>& values,
              const GlobalOptions& opts) {
  if (values.empty()) {
    throw Error(Errc::ConfigError, "--values must list at least one value");
  }
  ScenarioConfig base = load_with_overrides(config_path, opts);

  std::vector<SweepCell> cells;
  for (const auto& raw : values) {
    ScenarioConfig config = base;
    apply_sweep_value(config, param, raw);
    validate_scenario(config);
    SweepCell cell;
    cell.param = param;
    cell.value = raw;
    cell.result = run_simulation(config, opts.threads);
    cells.push_back(std::move(cell));
  }

  fs::create_directories(base.output.dir);
  fs::path dir(base.output.dir);
  write_file((dir / "sweep.csv").string(), sweep_csv(cells));

  std::cout << "sweep over " << param << ": " << cells.size()
            << " cell(s)\n";
  for (const auto& cell : cells) {
    std::cout << "  " << param << "=" << cell.value << " mean clearing price "
              << format_number(
                     cell.result.aggregates.at("clearing_price").mean)
              << '\n';
  }
  std::cout << "wrote " << (dir / "sweep.csv").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic emission-permit market simulator"};
  app.require_subcommand(1);

  GlobalOptions opts;
  auto* output_dir_opt =
      app.add_option("--output-dir", opts.output_dir,
                     "directory for result files (overrides config)");
  auto* seed_opt = app.add_option("--seed", opts.seed,
                                  "root RNG seed (overrides config)");
  app.add_option("--threads", opts.threads,
                 "worker threads for replications and campaigns")
      ->envname("ETS_SIM_THREADS")
      ->check(CLI::PositiveNumber);

  auto* replay = app.add_subcommand(
      "replay-example", "replay the worked four-bidder example and compare");

  std::string run_config;
  auto* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", run_config, "scenario JSON path")->required();

  std::string verify_config;
  std::vector<std::string> checks;
  auto* verify =
      app.add_subcommand("verify", "run brute-force verification suites");
  verify->add_option("config", verify_config, "scenario JSON path")
      ->required();
  verify->add_option("--checks", checks,
                     "subset of prop1,prop2,prop3,prop4,remark")
      ->delimiter(',');

  std::string sweep_config, sweep_param;
  std::vector<std::string> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "run a one-parameter sweep");
  sweep->add_option("config", sweep_config, "scenario JSON path")->required();
  sweep->add_option("--param", sweep_param,
                    "beta | extra_shade | speculator_bid | k | banking_cap")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")
      ->required()
      ->delimiter(',');

  for (auto* sub : {replay, run, verify, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opts.output_dir_set = output_dir_opt->count() > 0;
  opts.seed_set = seed_opt->count() > 0;

  try {
    if (replay->parsed()) return cmd_replay_example();
    if (run->parsed()) return cmd_run(run_config, opts);
    if (verify->parsed()) return cmd_verify(verify_config, checks, opts);
    return cmd_sweep(sweep_config, sweep_param, sweep_values, opts);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what()
              << '\n';
    return e.code() == Errc::ConfigError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
