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

#include <span>
#include <vector>

#include "trio/net/party_context.hpp"

namespace trio::mpc {

// How the helper hands out a value it has computed. Single: P1's share is
// tape-derived from k12 and only P0's share travels. Pair: both shares are
// sent.
enum class Delivery { Single, Pair };

// Delivery used inside the comparison pipeline (ReLU, MaxPool, ArgMax).
inline Delivery nonlinear_delivery(const net::PartyContext& ctx) {
  return ctx.flags().prf_opt ? Delivery::Single : Delivery::Pair;
}

// Secret-shares `values` (known to P2) modulo m (0 means 2^64) between P0
// and P1. P2 passes the values and gets an empty vector back; P0 and P1 pass
// nothing and receive their n shares.
std::vector<Ring> deal(net::PartyContext& ctx, net::Phase phase, std::span<const Ring> values,
                       std::size_t n, Ring modulus, Delivery delivery);

}  // namespace trio::mpc
