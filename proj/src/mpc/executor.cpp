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

#include "trio/mpc/executor.hpp"

#include <algorithm>

#include "trio/errors.hpp"
#include "trio/kernels/parallel.hpp"
#include "trio/mpc/beaver.hpp"
#include "trio/mpc/nonlinear.hpp"
#include "trio/mpc/truncate.hpp"

namespace trio::mpc {

namespace {

bool receives(const net::PartyContext& ctx, int party) {
  const auto& r = ctx.output_recipients();
  return std::find(r.begin(), r.end(), party) != r.end();
}

RingTensor sum_pool(const RingTensor& x, std::int64_t window, std::int64_t stride) {
  const auto g = kernels::PoolGeometry::make(x.shape(), window, stride);
  const RingTensor windows = kernels::pool_windows(x, g);
  const auto k = g.window_size();
  RingTensor out(g.output_shape());
  for (std::int64_t r = 0; r < g.num_windows(); ++r) {
    Ring acc = 0;
    for (std::int64_t j = 0; j < k; ++j) acc += windows[r * k + j];
    out[r] = acc;
  }
  return out;
}

}  // namespace

std::optional<RingTensor> reveal(net::PartyContext& ctx, const RingTensor& x) {
  if (ctx.is_helper()) return std::nullopt;
  const int me = ctx.party(), peer = ctx.peer();
  const bool mine = receives(ctx, me), theirs = receives(ctx, peer);
  std::vector<Ring> other;
  if (mine && theirs) {
    other = ctx.exchange(peer, net::Phase::RevealOutput, x.span());
  } else if (theirs) {
    ctx.send(peer, net::Phase::RevealOutput, x.span());
  } else if (mine) {
    other = ctx.recv(peer, net::Phase::RevealOutput, static_cast<std::size_t>(x.size()));
  }
  if (!mine) return std::nullopt;
  RingTensor out = x;
  kernels::add_inplace(out.span(), other);
  return out;
}

std::optional<RingTensor> run_llil_mpc(net::PartyContext& ctx, const ir::LlilProgram& program,
                                       const std::optional<RingTensor>& input_share) {
  ir::LlilProgram p = program;
  ir::infer_shapes(p);
  if (!ctx.is_helper()) {
    ir::validate(p);
    if (!input_share) throw ValidationError("data party needs an input share");
    if (input_share->shape() != p.input_shape) {
      throw ShapeError("input share shape " + shape_str(input_share->shape()) +
                       " does not match program input " + shape_str(p.input_shape));
    }
  }
  const auto conv_mode = ctx.flags().reshaped_conv ? ConvMode::Reshaped : ConvMode::Naive;

  std::vector<RingTensor> vals(p.nodes.size());
  auto arg = [&](const ir::Node& n, std::size_t k) -> const RingTensor& {
    return vals[static_cast<std::size_t>(n.inputs[k])];
  };
  for (const auto& n : p.nodes) {
    const auto& a = n.attrs;
    RingTensor out;
    switch (n.op) {
      case ir::OpKind::Input:
        out = ctx.is_helper() ? RingTensor(n.shape) : *input_share;
        break;
      case ir::OpKind::Const:
        out = ctx.is_helper() ? RingTensor(n.shape) : p.weights.at(n.id);
        break;
      case ir::OpKind::MatMul:
        out = beaver_matmul(ctx, arg(n, 0), arg(n, 1));
        break;
      case ir::OpKind::Conv2D:
        out = conv2d_protocol(ctx, arg(n, 0), arg(n, 1), a.stride, a.padding, conv_mode);
        break;
      case ir::OpKind::Add:
        out = broadcast_add(arg(n, 0), arg(n, 1));
        break;
      case ir::OpKind::Mul:
        out = beaver_mul(ctx, arg(n, 0), arg(n, 1));
        break;
      case ir::OpKind::ScaleDown:
        out = truncate(ctx, arg(n, 0), a.shift);
        break;
      case ir::OpKind::ReLU:
        out = relu(ctx, arg(n, 0));
        break;
      case ir::OpKind::MaxPool:
        out = maxpool(ctx, arg(n, 0), a.window, a.stride);
        break;
      case ir::OpKind::SumPool:
        out = sum_pool(arg(n, 0), a.window, a.stride);
        break;
      case ir::OpKind::PublicDiv:
        out = public_div(ctx, arg(n, 0), a.divisor);
        break;
      case ir::OpKind::Reshape:
        out = arg(n, 0).reshaped(a.target_shape);
        break;
      case ir::OpKind::ArgMax:
        out = argmax_protocol(ctx, arg(n, 0));
        break;
      default:
        throw ValidationError("secure backend: unsupported op " + std::string(ir::op_name(n.op)));
    }
    if (out.shape() != n.shape) {
      throw ShapeError("node " + std::to_string(n.id) + " produced " + shape_str(out.shape()) +
                       ", expected " + shape_str(n.shape));
    }
    vals[static_cast<std::size_t>(n.id)] = std::move(out);
  }
  return reveal(ctx, vals[static_cast<std::size_t>(p.output)]);
}

}  // namespace trio::mpc
