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

#include "trio/mpc/nonlinear.hpp"

#include "trio/errors.hpp"
#include "trio/kernels/parallel.hpp"
#include "trio/mpc/beaver.hpp"
#include "trio/mpc/compare.hpp"

namespace trio::mpc {

RingTensor drelu(net::PartyContext& ctx, const RingTensor& x) {
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<Ring> doubled(n);
  for (std::size_t k = 0; k < n; ++k) doubled[k] = 2 * x[static_cast<std::int64_t>(k)];
  auto converted = share_convert(ctx, doubled);
  if (ctx.is_helper()) converted.assign(n, 0);
  const auto msb = compute_msb(ctx, converted);
  RingTensor out(x.shape());
  if (ctx.is_helper()) return out;
  for (std::size_t k = 0; k < n; ++k) {
    out[static_cast<std::int64_t>(k)] = (ctx.party() == 0 ? 1 : 0) - msb[k];
  }
  return out;
}

RingTensor select_share(net::PartyContext& ctx, const RingTensor& b, const RingTensor& x,
                        const RingTensor& y) {
  RingTensor out = beaver_mul(ctx, b, kernels::sub(y, x), nonlinear_delivery(ctx));
  kernels::add_inplace(out.span(), x.span());
  return out;
}

RingTensor relu(net::PartyContext& ctx, const RingTensor& x) {
  return beaver_mul(ctx, drelu(ctx, x), x, nonlinear_delivery(ctx));
}

RingTensor maxpool(net::PartyContext& ctx, const RingTensor& x, std::int64_t window,
                   std::int64_t stride) {
  const auto g = kernels::PoolGeometry::make(x.shape(), window, stride);
  const RingTensor windows = kernels::pool_windows(x, g);
  const auto rows = g.num_windows();
  const auto k = g.window_size();
  RingTensor best({rows});
  for (std::int64_t r = 0; r < rows; ++r) best[r] = windows[r * k];
  RingTensor diff({rows});
  for (std::int64_t j = 1; j < k; ++j) {
    for (std::int64_t r = 0; r < rows; ++r) diff[r] = windows[r * k + j] - best[r];
    kernels::add_inplace(best.span(), relu(ctx, diff).span());
  }
  return best.reshaped(g.output_shape());
}

RingTensor argmax_protocol(net::PartyContext& ctx, const RingTensor& x) {
  if (x.rank() == 0) throw ShapeError("argmax of a scalar");
  const auto n = x.shape().back();
  const auto rows = x.size() / n;
  Shape out_shape(x.shape().begin(), x.shape().end() - 1);
  if (out_shape.empty()) out_shape = {1};

  const Ring owner = ctx.party() == 0 ? 1 : 0;  // P0 carries public constants
  RingTensor best({rows}), index({rows}), gap({rows}), moves({2 * rows}), col({rows});
  for (std::int64_t r = 0; r < rows; ++r) best[r] = x[r * n];
  for (std::int64_t j = 1; j < n; ++j) {
    for (std::int64_t r = 0; r < rows; ++r) {
      col[r] = x[r * n + j];
      gap[r] = best[r] - col[r];
    }
    const RingTensor keep = drelu(ctx, gap);
    RingTensor keep2({2 * rows});
    for (std::int64_t r = 0; r < rows; ++r) {
      keep2[r] = keep2[rows + r] = keep[r];
      moves[r] = gap[r];
      moves[rows + r] = index[r] - owner * static_cast<Ring>(j);
    }
    const RingTensor prod = beaver_mul(ctx, keep2, moves, nonlinear_delivery(ctx));
    for (std::int64_t r = 0; r < rows; ++r) {
      best[r] = col[r] + prod[r];
      index[r] = owner * static_cast<Ring>(j) + prod[rows + r];
    }
  }
  return index.reshaped(out_shape);
}

}  // namespace trio::mpc
