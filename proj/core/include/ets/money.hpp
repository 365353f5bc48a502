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

#ifndef ETS_MONEY_HPP_
#define ETS_MONEY_HPP_

#include <cmath>

namespace ets {

using Money = double;

namespace money {

inline constexpr Money kTolerance = 1e-9;

inline bool eq(Money a, Money b) { return std::fabs(a - b) <= kTolerance; }
inline bool ne(Money a, Money b) { return !eq(a, b); }
inline bool lt(Money a, Money b) { return a < b - kTolerance; }
inline bool gt(Money a, Money b) { return a > b + kTolerance; }
inline bool le(Money a, Money b) { return a <= b + kTolerance; }
inline bool ge(Money a, Money b) { return a >= b - kTolerance; }

}  // namespace money

}  // namespace ets

#endif  // ETS_MONEY_HPP_
