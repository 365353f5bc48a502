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

#include "ets/market.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ets {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonMonotoneValues: return "NonMonotoneValues";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::TooManyUnits: return "TooManyUnits";
    case Errc::SpeculatorNonzeroValue: return "SpeculatorNonzeroValue";
    case Errc::DuplicateFirmId: return "DuplicateFirmId";
    case Errc::UnknownFirmId: return "UnknownFirmId";
    case Errc::EmptyMarket: return "EmptyMarket";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::InvalidBeta: return "InvalidBeta";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::ResultNotMonotone: return "ResultNotMonotone";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

BidGrid make_grid(Money lo, Money hi, Money step, int max_units) {
  if (step <= 0.0 || hi < lo) {
    throw Error(Errc::InvalidArgument, "grid requires step > 0 and hi >= lo");
  }
  BidGrid grid;
  grid.max_units = max_units;
  // Integer stepping keeps grid points exact for decimal steps.
  long long count = static_cast<long long>(std::floor((hi - lo) / step + 0.5));
  for (long long i = 0; i <= count; ++i) {
    Money p = lo + step * static_cast<Money>(i);
    if (p > hi + money::kTolerance) break;
    grid.points.push_back(p);
  }
  if (grid.points.empty() || grid.points.back() < hi - money::kTolerance) {
    grid.points.push_back(hi);
  }
  return grid;
}

namespace {

void check_vector(const std::vector<Money>& xs, int k, const FirmId& id,
                  const char* what) {
  if (static_cast<int>(xs.size()) > k) {
    std::ostringstream os;
    os << id << ": " << xs.size() << " " << what << " for " << k << " permits";
    throw Error(Errc::TooManyUnits, os.str());
  }
  for (size_t u = 0; u < xs.size(); ++u) {
    if (xs[u] < 0.0) {
      throw Error(Errc::NegativeValue,
                  id + ": negative " + std::string(what));
    }
    if (u > 0 && xs[u] > xs[u - 1] + money::kTolerance) {
      throw Error(Errc::NonMonotoneValues,
                  id + ": " + std::string(what) + " must be non-increasing");
    }
  }
}

}  // namespace

const ValuationProfile& validate_profile(const ValuationProfile& profile,
                                         int k) {
  check_vector(profile.values, k, profile.firm_id, "values");
  if (profile.kind == FirmKind::Speculator) {
    for (Money v : profile.values) {
      if (money::ne(v, 0.0)) {
        throw Error(Errc::SpeculatorNonzeroValue,
                    profile.firm_id + ": speculator use value must be zero");
      }
    }
  }
  return profile;
}

const BidSchedule& validate_schedule(const BidSchedule& schedule, int k) {
  check_vector(schedule.bids, k, schedule.firm_id, "bids");
  return schedule;
}

void validate_market(const MarketConfig& config) {
  if (config.n < 2) {
    throw Error(Errc::ConfigError, "market.n must be >= 2");
  }
  if (config.k < 1) {
    throw Error(Errc::ConfigError, "market.k must be >= 1");
  }
  if (const auto* u = std::get_if<UniformValues>(&config.distribution)) {
    if (!(u->lo >= 0.0) || !(u->hi >= u->lo)) {
      throw Error(Errc::InvalidDistribution,
                  "uniform distribution requires 0 <= lo <= hi");
    }
  } else if (const auto* d = std::get_if<DiscreteValues>(&config.distribution)) {
    if (d->values.empty() || d->values.size() != d->probabilities.size()) {
      throw Error(Errc::InvalidDistribution,
                  "discrete distribution needs matching values/probabilities");
    }
    double total = 0.0;
    for (size_t i = 0; i < d->values.size(); ++i) {
      if (d->values[i] < 0.0) {
        throw Error(Errc::InvalidDistribution, "discrete value < 0");
      }
      if (d->probabilities[i] < 0.0) {
        throw Error(Errc::InvalidDistribution, "discrete probability < 0");
      }
      total += d->probabilities[i];
    }
    if (std::fabs(total - 1.0) > 1e-6) {
      throw Error(Errc::InvalidDistribution,
                  "discrete probabilities must sum to 1");
    }
  } else {
    const auto& fixed = std::get<FixedProfiles>(config.distribution);
    int polluters = 0;
    bool has_speculator = false;
    std::set<FirmId> ids;
    for (const auto& p : fixed.profiles) {
      validate_profile(p, config.k);
      if (!ids.insert(p.firm_id).second) {
        throw Error(Errc::DuplicateFirmId, "duplicate firm id " + p.firm_id);
      }
      if (p.kind == FirmKind::Speculator) {
        has_speculator = true;
      } else {
        ++polluters;
      }
    }
    if (has_speculator && !config.speculator_present) {
      throw Error(Errc::ConfigError,
                  "fixed speculator profile but speculator_present is false");
    }
    int expected = config.speculator_present && !has_speculator
                       ? config.n - 1
                       : config.n;
    if (static_cast<int>(fixed.profiles.size()) != expected) {
      std::ostringstream os;
      os << "fixed profiles: got " << fixed.profiles.size() << ", expected "
         << expected << " for n=" << config.n;
      throw Error(Errc::ConfigError, os.str());
    }
    if (polluters + (config.speculator_present ? 1 : 0) != config.n) {
      throw Error(Errc::ConfigError, "firm count does not match market.n");
    }
  }
  if (!std::holds_alternative<FixedProfiles>(config.distribution) &&
      config.speculator_present && config.n < 3) {
    throw Error(Errc::ConfigError,
                "speculator markets need at least two polluters");
  }
}

std::vector<FirmId> polluter_ids(int count) {
  int width = 1;
  for (int c = count; c >= 10; c /= 10) ++width;
  std::vector<FirmId> ids;
  ids.reserve(count);
  for (int i = 1; i <= count; ++i) {
    std::string digits = std::to_string(i);
    ids.push_back("F" + std::string(width - digits.size(), '0') + digits);
  }
  return ids;
}

namespace {

Money draw_value(const ValueDistribution& dist, RngStream& stream) {
  if (const auto* u = std::get_if<UniformValues>(&dist)) {
    return stream.uniform(u->lo, u->hi);
  }
  const auto& d = std::get<DiscreteValues>(dist);
  double roll = stream.next_double();
  double acc = 0.0;
  for (size_t i = 0; i < d.values.size(); ++i) {
    acc += d.probabilities[i];
    if (roll < acc) return d.values[i];
  }
  return d.values.back();
}

}  // namespace

std::vector<ValuationProfile> sample_profiles(const MarketConfig& config,
                                              RngStream& stream) {
  validate_market(config);

  if (const auto* fixed = std::get_if<FixedProfiles>(&config.distribution)) {
    std::vector<ValuationProfile> out = fixed->profiles;
    bool has_speculator = std::any_of(
        out.begin(), out.end(),
        [](const auto& p) { return p.kind == FirmKind::Speculator; });
    if (config.speculator_present && !has_speculator) {
      ValuationProfile s;
      s.firm_id = kSpeculatorId;
      s.kind = FirmKind::Speculator;
      s.values.assign(config.k, 0.0);
      out.push_back(std::move(s));
    }
    return out;
  }

  int polluters = config.n - (config.speculator_present ? 1 : 0);
  std::vector<ValuationProfile> out;
  out.reserve(config.n);
  for (const FirmId& id : polluter_ids(polluters)) {
    ValuationProfile p;
    p.firm_id = id;
    RngStream firm_stream = stream.derive(id);
    p.values.assign(config.k, draw_value(config.distribution, firm_stream));
    out.push_back(std::move(p));
  }
  if (config.speculator_present) {
    ValuationProfile s;
    s.firm_id = kSpeculatorId;
    s.kind = FirmKind::Speculator;
    s.values.assign(config.k, 0.0);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ets
