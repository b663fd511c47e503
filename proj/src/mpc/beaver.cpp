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

#include "trio/mpc/beaver.hpp"

#include "trio/errors.hpp"
#include "trio/kernels/parallel.hpp"

namespace trio::mpc {

namespace {

using net::KeyPair;
using net::Phase;

RingTensor opened(net::PartyContext& ctx, Phase phase, const RingTensor& mine) {
  auto theirs = ctx.exchange(ctx.peer(), phase, mine.span());
  RingTensor out = mine;
  kernels::add_inplace(out.span(), theirs);
  return out;
}

}  // namespace

RingTensor broadcast_mul(const RingTensor& x, const RingTensor& y) {
  RingTensor out = x;
  if (x.shape() == y.shape()) {
    kernels::mul_inplace(out.span(), y.span());
    return out;
  }
  const auto c = y.size();
  if (x.rank() == 0 || x.shape().back() != c) {
    throw ShapeError("operand shapes " + shape_str(x.shape()) + " and " + shape_str(y.shape()) +
                     " do not broadcast");
  }
  for (std::int64_t i = 0; i < x.size(); ++i) out[i] *= y[i % c];
  return out;
}

RingTensor broadcast_add(const RingTensor& x, const RingTensor& y) {
  RingTensor out = x;
  if (x.shape() == y.shape()) {
    kernels::add_inplace(out.span(), y.span());
    return out;
  }
  const auto c = y.size();
  if (x.rank() == 0 || x.shape().back() != c) {
    throw ShapeError("operand shapes " + shape_str(x.shape()) + " and " + shape_str(y.shape()) +
                     " do not broadcast");
  }
  for (std::int64_t i = 0; i < x.size(); ++i) out[i] += y[i % c];
  return out;
}

RingTensor beaver_bilinear(net::PartyContext& ctx, const RingTensor& x, const RingTensor& y,
                           const BilinearOp& op, Delivery delivery) {
  if (ctx.is_helper()) {
    auto a = ctx.tape(KeyPair::P02, Phase::BeaverE).tensor(x.shape());
    auto b = ctx.tape(KeyPair::P02, Phase::BeaverF).tensor(y.shape());
    kernels::add_inplace(a.span(), ctx.tape(KeyPair::P12, Phase::BeaverE).tensor(x.shape()).span());
    kernels::add_inplace(b.span(), ctx.tape(KeyPair::P12, Phase::BeaverF).tensor(y.shape()).span());
    RingTensor c = op(a, b);
    RingTensor c1 = delivery == Delivery::Single
                        ? ctx.tape(KeyPair::P12, Phase::BeaverC).tensor(c.shape())
                        : ctx.private_tape().tensor(c.shape());
    if (delivery == Delivery::Pair) ctx.send(1, Phase::BeaverC, c1.span());
    kernels::sub_inplace(c.span(), c1.span());
    ctx.send(0, Phase::BeaverC, c.span());
    return RingTensor(c.shape());
  }

  const int me = ctx.party();
  const KeyPair pair = me == 0 ? KeyPair::P02 : KeyPair::P12;
  RingTensor a = ctx.tape(pair, Phase::BeaverE).tensor(x.shape());
  RingTensor b = ctx.tape(pair, Phase::BeaverF).tensor(y.shape());
  const RingTensor e = opened(ctx, Phase::BeaverE, kernels::sub(x, a));
  const RingTensor f = opened(ctx, Phase::BeaverF, kernels::sub(y, b));

  RingTensor z = op(e, b);
  kernels::add_inplace(z.span(), op(a, f).span());
  RingTensor c;
  if (me == 0 || delivery == Delivery::Pair) {
    c = RingTensor(z.shape(), ctx.recv(2, Phase::BeaverC, static_cast<std::size_t>(z.size())));
  } else {
    c = ctx.tape(KeyPair::P12, Phase::BeaverC).tensor(z.shape());
  }
  kernels::add_inplace(z.span(), c.span());
  if (me == 1) kernels::add_inplace(z.span(), op(e, f).span());
  return z;
}

RingTensor beaver_matmul(net::PartyContext& ctx, const RingTensor& x, const RingTensor& y) {
  if (x.rank() != 2 || y.rank() != 2 || x.dim(1) != y.dim(0)) {
    throw ShapeError("matmul shapes " + shape_str(x.shape()) + " and " + shape_str(y.shape()) +
                     " do not chain");
  }
  return beaver_bilinear(ctx, x, y, [](const RingTensor& a, const RingTensor& b) {
    return kernels::matmul(a, b);
  });
}

RingTensor beaver_mul(net::PartyContext& ctx, const RingTensor& x, const RingTensor& y,
                      Delivery delivery) {
  if (x.shape() != y.shape() && (x.rank() == 0 || x.shape().back() != y.size())) {
    throw ShapeError("operand shapes " + shape_str(x.shape()) + " and " + shape_str(y.shape()) +
                     " do not broadcast");
  }
  return beaver_bilinear(ctx, x, y, broadcast_mul, delivery);
}

RingTensor conv2d_protocol(net::PartyContext& ctx, const RingTensor& image,
                           const RingTensor& filter, std::int64_t stride,
                           kernels::Padding padding, ConvMode mode) {
  const auto g = kernels::ConvGeometry::make(image.shape(), filter.shape(), stride, padding);
  if (mode == ConvMode::Reshaped) {
    return beaver_bilinear(ctx, image, filter, [g](const RingTensor& a, const RingTensor& b) {
      return kernels::conv2d(a, b, g);
    });
  }
  const RingTensor cols = kernels::im2col(image, g);
  const RingTensor w = filter.reshaped({g.patch_size(), g.out_channels});
  return beaver_matmul(ctx, cols, w).reshaped(g.output_shape());
}

}  // namespace trio::mpc
