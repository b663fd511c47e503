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

// Shares of 1 if signed(x) >= 0, else 0. Requires |signed(x)| < 2^62.
RingTensor drelu(net::PartyContext& ctx, const RingTensor& x);

// Shares of b ? y : x.
RingTensor select_share(net::PartyContext& ctx, const RingTensor& b, const RingTensor& x,
                        const RingTensor& y);

RingTensor relu(net::PartyContext& ctx, const RingTensor& x);

RingTensor maxpool(net::PartyContext& ctx, const RingTensor& x, std::int64_t window,
                   std::int64_t stride);

// Shares of the index of the first maximum along the last axis.
RingTensor argmax_protocol(net::PartyContext& ctx, const RingTensor& x);

}  // namespace trio::mpc
