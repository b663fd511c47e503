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

#include <vector>

#include "trio/net/party_context.hpp"

namespace trio::mpc {

inline constexpr int kBits = 64;

// P0/P1 hold Z_67 shares of the bits of n values x (x_bits[k * 64 + i] is
// bit i of value k), and both know r and the bits beta. P2 returns
// beta XOR (x > r) for every value; P0 and P1 return an empty vector. P2
// passes empty x_bits, r and beta.
std::vector<Ring> private_compare(net::PartyContext& ctx, const std::vector<Ring>& x_bits,
                                  const std::vector<Ring>& r, const std::vector<Ring>& beta,
                                  std::size_t n);

// Converts shares over Z_{2^64} into shares over Z_{2^64-1}. Requires
// a != 2^64 - 1. P2 passes n zeros and gets an empty vector.
std::vector<Ring> share_convert(net::PartyContext& ctx, const std::vector<Ring>& a);

// Z_{2^64} shares of bit 63 of a, given shares of a over Z_{2^64-1}.
std::vector<Ring> compute_msb(net::PartyContext& ctx, const std::vector<Ring>& a);

}  // namespace trio::mpc
