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

#include <algorithm>
#include <vector>

#include <benchmark/benchmark.h>

#include "ets/auction.hpp"
#include "ets/oracle.hpp"
#include "ets/rng.hpp"
#include "ets/secondary.hpp"

namespace {

using namespace ets;

std::vector<ValuationProfile> drawn_profiles(int n, int units) {
  RngStream stream(12345);
  std::vector<ValuationProfile> out;
  for (int i = 0; i < n; ++i) {
    RngStream firm = stream.derive(static_cast<std::uint64_t>(i));
    std::vector<Money> values;
    for (int u = 0; u < units; ++u) values.push_back(firm.uniform(0, 10));
    std::sort(values.begin(), values.end(), std::greater<>());
    out.push_back({"F" + std::to_string(i + 1), std::move(values),
                   FirmKind::Polluter});
  }
  return out;
}

std::vector<BidSchedule> truthful_bids(
    const std::vector<ValuationProfile>& profiles) {
  std::vector<BidSchedule> out;
  for (const auto& p : profiles) out.push_back({p.firm_id, p.values});
  return out;
}

void BM_ClearAuction(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto profiles = drawn_profiles(n, 4);
  auto bids = truthful_bids(profiles);
  int k = 2 * n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(clear_auction(bids, profiles, k));
  }
}
BENCHMARK(BM_ClearAuction)->Arg(5)->Arg(50);

void BM_RunSecondary(benchmark::State& state) {
  auto profiles = drawn_profiles(static_cast<int>(state.range(0)), 4);
  // Seed the allocation backwards so the trading loop has work to do.
  Allocation misallocated;
  int k = static_cast<int>(profiles.size()) * 2;
  int left = k;
  for (auto it = profiles.rbegin(); it != profiles.rend() && left > 0; ++it) {
    int give = std::min(4, left);
    misallocated.add(it->firm_id, give);
    left -= give;
  }
  SecondaryConfig config{true, 0.5, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_secondary(misallocated, profiles, config, 0.0));
  }
}
BENCHMARK(BM_RunSecondary)->Arg(5)->Arg(12);

void BM_EnumerateAllocations(benchmark::State& state) {
  auto profiles = drawn_profiles(5, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_allocations_max_surplus(profiles, 4));
  }
}
BENCHMARK(BM_EnumerateAllocations);

void BM_BestResponse(benchmark::State& state) {
  auto profiles = drawn_profiles(4, 2);
  auto bids = truthful_bids(profiles);
  BidGrid grid = make_grid(0, 10, 0.5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(profiles[0].firm_id, profiles,
                                           bids, 2, grid, false,
                                           SecondaryConfig{}));
  }
}
BENCHMARK(BM_BestResponse);

}  // namespace

BENCHMARK_MAIN();
