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

#ifndef ETS_RNG_HPP_
#define ETS_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace ets {

// Counter-based stream built on the splitmix64 finalizer. Substreams are
// addressed by name or index, so any draw in the program has a stable
// identity regardless of evaluation order or thread count. The std
// distributions are avoided on purpose: their output is implementation
// defined, which would break byte-identical replay across toolchains.
class RngStream {
 public:
  RngStream() : state_(0) {}
  explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ kInitMix)) {}

  RngStream derive(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return RngStream(FromState{}, mix(state_ ^ mix(h)));
  }

  RngStream derive(std::uint64_t index) const {
    return RngStream(FromState{}, mix(state_ ^ mix(index ^ kIndexMix)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return next_u64() % n;
  }

 private:
  struct FromState {};
  RngStream(FromState, std::uint64_t s) : state_(s) {}

  static constexpr std::uint64_t kInitMix = 0x5851f42d4c957f2dull;
  static constexpr std::uint64_t kIndexMix = 0x94d049bb133111ebull;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace ets

#endif  // ETS_RNG_HPP_
