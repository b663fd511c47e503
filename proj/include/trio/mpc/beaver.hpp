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

#include <functional>

#include "trio/kernels/geometry.hpp"
#include "trio/mpc/dealing.hpp"
#include "trio/net/party_context.hpp"
#include "trio/tensor.hpp"

namespace trio::mpc {

// A map that is linear in each argument over Z_{2^64}.
using BilinearOp = std::function<RingTensor(const RingTensor&, const RingTensor&)>;

// Beaver evaluation of op(X, Y) on shares. The helper passes zero tensors of
// the operand shapes. Returns shares of op(X, Y) on P0/P1 and an empty
// tensor of the output shape on P2.
RingTensor beaver_bilinear(net::PartyContext& ctx, const RingTensor& x, const RingTensor& y,
                           const BilinearOp& op, Delivery delivery = Delivery::Single);

RingTensor beaver_matmul(net::PartyContext& ctx, const RingTensor& x, const RingTensor& y);

// Element-wise product; y either matches x or is a vector over x's last axis.
RingTensor beaver_mul(net::PartyContext& ctx, const RingTensor& x, const RingTensor& y,
                      Delivery delivery = Delivery::Single);

RingTensor broadcast_mul(const RingTensor& x, const RingTensor& y);
RingTensor broadcast_add(const RingTensor& x, const RingTensor& y);

enum class ConvMode { Naive, Reshaped };

// Naive mode masks the im2col expansion of the image; reshaped mode masks the
// image itself and expands the public difference locally.
RingTensor conv2d_protocol(net::PartyContext& ctx, const RingTensor& image,
                           const RingTensor& filter, std::int64_t stride,
                           kernels::Padding padding, ConvMode mode);

}  // namespace trio::mpc
