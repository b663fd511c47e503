// Copyright 2026 The Trio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Arithmetic over the odd ring Z_{2^64-1} and the small prime field used for
// bit-wise comparison. Elements are stored in Ring words, always reduced.

#include <cstdint>

#include "trio/tensor.hpp"

namespace trio::mpc {

inline constexpr Ring kOddModulus = ~Ring{0};  // 2^64 - 1
inline constexpr Ring kPrime = 67;

// Reduces x into [0, m). m == 0 stands for 2^64.
inline Ring reduce(Ring x, Ring m) { return m == 0 ? x : x % m; }

inline Ring mod_add(Ring a, Ring b, Ring m) {
  if (m == 0) return a + b;
  const auto s = static_cast<unsigned __int128>(a) + b;
  return static_cast<Ring>(s % m);
}

inline Ring mod_neg(Ring a, Ring m) {
  if (m == 0) return Ring{0} - a;
  return a == 0 ? 0 : m - a;
}

inline Ring mod_sub(Ring a, Ring b, Ring m) { return mod_add(a, mod_neg(b, m), m); }

inline Ring mod_mul(Ring a, Ring b, Ring m) {
  if (m == 0) return a * b;
  return static_cast<Ring>(static_cast<unsigned __int128>(a) * b % m);
}

// 1 when a + b overflows 2^64 as integers.
inline Ring wraps(Ring a, Ring b) { return a + b < a ? 1 : 0; }

}  // namespace trio::mpc
