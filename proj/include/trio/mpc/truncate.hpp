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

#include "trio/net/party_context.hpp"
#include "trio/tensor.hpp"

namespace trio::mpc {

// Shares of floor(signed(x) / 2^s) or one more, for |signed(x)| < 2^62. The
// helper deals shares of a random mask's high part and top bit; P0 and P1
// open the masked value to each other.
RingTensor truncate(net::PartyContext& ctx, const RingTensor& x, int shift);

// Zero-communication variant: P0 shifts its share, P1 negates, shifts and
// negates. Off by at most one except with probability about |x| / 2^63.
RingTensor truncate_local(int party, const RingTensor& x, int shift);

// Division by a public positive integer. Powers of two go through truncate;
// other divisors use the local method.
RingTensor public_div(net::PartyContext& ctx, const RingTensor& x, std::int64_t divisor);

}  // namespace trio::mpc
