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

#include "trio/ir/interpreter.hpp"

#include <algorithm>
#include <cmath>

#include "trio/kernels/parallel.hpp"
#include "trio/kernels/reference.hpp"

namespace trio::ir {

namespace {

constexpr double kGuard = 4611686018427387904.0;  // 2^62

template <typename T>
const Tensor<T>& arg(const std::vector<Tensor<T>>& vals, const Node& n, std::size_t k) {
  return vals[static_cast<std::size_t>(n.inputs[k])];
}

// rhs either matches lhs or is a per-channel vector over the last axis.
template <typename T, typename F>
Tensor<T> broadcast_binary(const Tensor<T>& lhs, const Tensor<T>& rhs, F f) {
  Tensor<T> out(lhs.shape());
  const bool same = lhs.shape() == rhs.shape();
  const auto c = rhs.size();
  if (!same && (lhs.rank() == 0 || lhs.shape().back() != c)) {
    throw ShapeError("operand shapes " + shape_str(lhs.shape()) + " and " +
                     shape_str(rhs.shape()) + " do not broadcast");
  }
  for (std::int64_t i = 0; i < lhs.size(); ++i) out[i] = f(lhs[i], rhs[same ? i : i % c]);
  return out;
}

void check_input(const Shape& expected, const Shape& got) {
  if (expected != got) {
    throw ShapeError("input shape " + shape_str(got) + " does not match " + shape_str(expected));
  }
}

bool matmul_exceeds_guard(std::span<const Ring> a, std::span<const Ring> b, std::int64_t rows,
                          std::int64_t inner, std::int64_t cols) {
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::int64_t p = 0; p < inner; ++p) {
        acc += static_cast<double>(to_signed(a[i * inner + p])) *
               static_cast<double>(to_signed(b[p * cols + j]));
      }
      if (std::fabs(acc) >= kGuard) return true;
    }
  }
  return false;
}

bool exceeds_guard(std::span<const Ring> v) {
  return std::any_of(v.begin(), v.end(), [](Ring x) {
    return std::fabs(static_cast<double>(to_signed(x))) >= kGuard;
  });
}

}  // namespace

std::int64_t floor_div(std::int64_t a, std::int64_t d) {
  auto q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

RingTensor argmax_ring(const RingTensor& t) {
  const auto n = t.shape().back();
  const auto rows = t.size() / n;
  RingTensor out(t.rank() == 1 ? Shape{1} : Shape(t.shape().begin(), t.shape().end() - 1));
  for (std::int64_t r = 0; r < rows; ++r) {
    std::int64_t best = 0;
    for (std::int64_t j = 1; j < n; ++j) {
      if (to_signed(t[r * n + j]) > to_signed(t[r * n + best])) best = j;
    }
    out[r] = static_cast<Ring>(best);
  }
  return out;
}

FloatTensor argmax_float(const FloatTensor& t) {
  const auto n = t.shape().back();
  const auto rows = t.size() / n;
  FloatTensor out(t.rank() == 1 ? Shape{1} : Shape(t.shape().begin(), t.shape().end() - 1));
  for (std::int64_t r = 0; r < rows; ++r) {
    std::int64_t best = 0;
    for (std::int64_t j = 1; j < n; ++j) {
      if (t[r * n + j] > t[r * n + best]) best = j;
    }
    out[r] = static_cast<float>(best);
  }
  return out;
}

RingTensor conv2d_ref(const RingTensor& image, const RingTensor& filter, std::int64_t stride,
                      kernels::Padding padding) {
  const auto g = kernels::ConvGeometry::make(image.shape(), filter.shape(), stride, padding);
  return kernels::reference::conv2d_direct(image, filter, g);
}

FloatTensor eval_float(const HlilGraph& g, const FloatTensor& input) {
  std::vector<FloatTensor> vals(g.nodes.size());
  for (const auto& n : g.nodes) {
    auto& out = vals[static_cast<std::size_t>(n.id)];
    const auto& a = n.attrs;
    switch (n.op) {
      case OpKind::Input:
        check_input(g.input_shape, input.shape());
        out = input;
        break;
      case OpKind::Const:
        out = g.weights.at(n.id);
        break;
      case OpKind::MatMul:
        out = kernels::matmul(arg(vals, n, 0), arg(vals, n, 1));
        break;
      case OpKind::Add:
        out = broadcast_binary(arg(vals, n, 0), arg(vals, n, 1),
                               [](float x, float y) { return x + y; });
        break;
      case OpKind::Conv2D: {
        const auto& x = arg(vals, n, 0);
        const auto& w = arg(vals, n, 1);
        out = kernels::conv2d(x, w, kernels::ConvGeometry::make(x.shape(), w.shape(), a.stride, a.padding));
        break;
      }
      case OpKind::ReLU:
        out = arg(vals, n, 0);
        for (auto& v : out.data()) v = v > 0.0f ? v : 0.0f;
        break;
      case OpKind::MaxPool:
      case OpKind::AvgPool: {
        const auto& x = arg(vals, n, 0);
        const auto pg = kernels::PoolGeometry::make(x.shape(), a.window, a.stride);
        const auto win = kernels::pool_windows(x, pg);
        out = FloatTensor(pg.output_shape());
        const auto k = pg.window_size();
        for (std::int64_t r = 0; r < pg.num_windows(); ++r) {
          if (n.op == OpKind::MaxPool) {
            float m = win[r * k];
            for (std::int64_t j = 1; j < k; ++j) m = std::max(m, win[r * k + j]);
            out[r] = m;
          } else {
            double s = 0.0;
            for (std::int64_t j = 0; j < k; ++j) s += win[r * k + j];
            out[r] = static_cast<float>(s / static_cast<double>(k));
          }
        }
        break;
      }
      case OpKind::BatchNorm: {
        const auto& x = arg(vals, n, 0);
        const auto &gamma = arg(vals, n, 1), &beta = arg(vals, n, 2), &mean = arg(vals, n, 3),
                   &var = arg(vals, n, 4);
        out = FloatTensor(x.shape());
        const auto c = x.shape().back();
        for (std::int64_t i = 0; i < x.size(); ++i) {
          const auto ch = i % c;
          const double y = gamma[ch] * (static_cast<double>(x[i]) - mean[ch]) /
                               std::sqrt(static_cast<double>(var[ch]) + a.epsilon) +
                           beta[ch];
          out[i] = static_cast<float>(y);
        }
        break;
      }
      case OpKind::Reshape:
        out = arg(vals, n, 0).reshaped(a.target_shape);
        break;
      case OpKind::ArgMax:
        out = argmax_float(arg(vals, n, 0));
        break;
      default:
        throw ValidationError("eval_float: unsupported op " + std::string(op_name(n.op)));
    }
  }
  return vals[static_cast<std::size_t>(g.output)];
}

RingTensor eval_fixed(const LlilProgram& p, const RingTensor& input, OverflowMonitor* monitor) {
  infer_scales(p);
  std::vector<RingTensor> vals(p.nodes.size());
  auto flag = [&](const Node& n, bool hit) {
    if (monitor && hit && !monitor->overflowed) {
      monitor->overflowed = true;
      monitor->first_node = n.id;
    }
  };
  for (const auto& n : p.nodes) {
    auto& out = vals[static_cast<std::size_t>(n.id)];
    const auto& a = n.attrs;
    switch (n.op) {
      case OpKind::Input:
        check_input(p.input_shape, input.shape());
        out = input;
        flag(n, exceeds_guard(out.span()));
        break;
      case OpKind::Const:
        out = p.weights.at(n.id);
        break;
      case OpKind::MatMul: {
        const auto &x = arg(vals, n, 0), &w = arg(vals, n, 1);
        out = kernels::matmul(x, w);
        if (monitor) flag(n, matmul_exceeds_guard(x.span(), w.span(), x.dim(0), x.dim(1), w.dim(1)));
        break;
      }
      case OpKind::Conv2D: {
        const auto &x = arg(vals, n, 0), &w = arg(vals, n, 1);
        const auto cg = kernels::ConvGeometry::make(x.shape(), w.shape(), a.stride, a.padding);
        const auto cols = kernels::im2col(x, cg);
        out = RingTensor(cg.output_shape());
        kernels::matmul<Ring>(cols.span(), w.span(), out.span(), cg.num_patches(), cg.patch_size(),
                              cg.out_channels);
        if (monitor) {
          flag(n, matmul_exceeds_guard(cols.span(), w.span(), cg.num_patches(), cg.patch_size(),
                                       cg.out_channels));
        }
        break;
      }
      case OpKind::Add:
        out = broadcast_binary(arg(vals, n, 0), arg(vals, n, 1), [](Ring x, Ring y) { return x + y; });
        if (monitor) flag(n, exceeds_guard(out.span()));
        break;
      case OpKind::Mul:
        if (monitor) {
          const auto exact = broadcast_binary(
              arg(vals, n, 0), arg(vals, n, 1), [](Ring x, Ring y) {
                const double v = static_cast<double>(to_signed(x)) * static_cast<double>(to_signed(y));
                return std::fabs(v) >= kGuard ? Ring{1} : Ring{0};
              });
          flag(n, std::any_of(exact.data().begin(), exact.data().end(), [](Ring v) { return v != 0; }));
        }
        out = broadcast_binary(arg(vals, n, 0), arg(vals, n, 1), [](Ring x, Ring y) { return x * y; });
        break;
      case OpKind::ScaleDown:
        out = arg(vals, n, 0);
        for (auto& v : out.data()) v = to_ring(to_signed(v) >> a.shift);
        break;
      case OpKind::ReLU:
        out = arg(vals, n, 0);
        for (auto& v : out.data()) v = to_signed(v) > 0 ? v : 0;
        break;
      case OpKind::MaxPool:
      case OpKind::SumPool: {
        const auto& x = arg(vals, n, 0);
        const auto pg = kernels::PoolGeometry::make(x.shape(), a.window, a.stride);
        const auto win = kernels::pool_windows(x, pg);
        out = RingTensor(pg.output_shape());
        const auto k = pg.window_size();
        for (std::int64_t r = 0; r < pg.num_windows(); ++r) {
          Ring acc = win[r * k];
          for (std::int64_t j = 1; j < k; ++j) {
            const Ring v = win[r * k + j];
            if (n.op == OpKind::SumPool) {
              acc += v;
            } else if (to_signed(v) > to_signed(acc)) {
              acc = v;
            }
          }
          out[r] = acc;
        }
        if (monitor && n.op == OpKind::SumPool) flag(n, exceeds_guard(out.span()));
        break;
      }
      case OpKind::PublicDiv:
        out = arg(vals, n, 0);
        for (auto& v : out.data()) v = to_ring(floor_div(to_signed(v), a.divisor));
        break;
      case OpKind::Reshape:
        out = arg(vals, n, 0).reshaped(a.target_shape);
        break;
      case OpKind::ArgMax:
        out = argmax_ring(arg(vals, n, 0));
        break;
      default:
        throw ValidationError("eval_fixed: unsupported op " + std::string(op_name(n.op)));
    }
  }
  return vals[static_cast<std::size_t>(p.output)];
}

}  // namespace trio::ir
