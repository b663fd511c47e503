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

#include "trio/ir/graph.hpp"

#include <array>

namespace trio::ir {

namespace {

struct OpInfo {
  OpKind op;
  std::string_view name;
  int arity;
  bool in_float;
  bool in_fixed;
};

constexpr std::array<OpInfo, 15> kOps = {{
    {OpKind::Input, "Input", 0, true, true},
    {OpKind::Const, "Const", 0, true, true},
    {OpKind::MatMul, "MatMul", 2, true, true},
    {OpKind::Add, "Add", 2, true, true},
    {OpKind::Conv2D, "Conv2D", 2, true, true},
    {OpKind::ReLU, "ReLU", 1, true, true},
    {OpKind::MaxPool, "MaxPool", 1, true, true},
    {OpKind::AvgPool, "AvgPool", 1, true, false},
    {OpKind::BatchNorm, "BatchNorm", 5, true, false},
    {OpKind::Reshape, "Reshape", 1, true, true},
    {OpKind::ArgMax, "ArgMax", 1, true, true},
    {OpKind::ScaleDown, "ScaleDown", 1, false, true},
    {OpKind::Mul, "Mul", 2, false, true},
    {OpKind::SumPool, "SumPool", 1, false, true},
    {OpKind::PublicDiv, "PublicDiv", 1, false, true},
}};

const OpInfo& info(OpKind op) { return kOps[static_cast<std::size_t>(op)]; }

std::string where(const Node& n) {
  return "node " + std::to_string(n.id) + " (" + std::string(op_name(n.op)) +
         (n.name.empty() ? "" : " '" + n.name + "'") + ")";
}

// Shape of `rhs` broadcast against `lhs`: equal shapes, or a per-channel
// vector ([C] or [1,C]) matching the last dimension of lhs.
bool broadcastable(const Shape& lhs, const Shape& rhs) {
  if (lhs == rhs) return true;
  if (lhs.empty()) return false;
  const auto c = lhs.back();
  if (rhs.size() == 1 && rhs[0] == c) return true;
  return rhs.size() == 2 && rhs[0] == 1 && rhs[1] == c;
}

template <typename W>
void validate_common(const Graph<W>& g, bool fixed, bool allow_missing_weights) {
  if (g.nodes.empty()) throw ValidationError("graph has no nodes (no output)");
  int inputs = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.id != static_cast<int>(i)) {
      throw ValidationError("node ids must be dense and ordered; found id " +
                            std::to_string(n.id) + " at position " + std::to_string(i));
    }
    const auto& oi = info(n.op);
    if (fixed ? !oi.in_fixed : !oi.in_float) {
      throw ValidationError(where(n) + " is not allowed in a " +
                            (fixed ? "fixed-point program" : "floating-point graph"));
    }
    if (static_cast<int>(n.inputs.size()) != oi.arity) {
      throw ValidationError(where(n) + " expects " + std::to_string(oi.arity) + " inputs, got " +
                            std::to_string(n.inputs.size()));
    }
    for (int in : n.inputs) {
      if (in < 0 || in >= n.id) {
        throw ValidationError(where(n) + " references undefined input id " + std::to_string(in));
      }
    }
    const auto& a = n.attrs;
    switch (n.op) {
      case OpKind::Input:
        ++inputs;
        break;
      case OpKind::Const: {
        auto it = g.weights.find(n.id);
        if (it == g.weights.end()) {
          if (!allow_missing_weights) throw ValidationError(where(n) + " has no weight payload");
          if (n.shape.empty()) throw ValidationError(where(n) + " has neither payload nor shape");
        } else if (!n.shape.empty() && it->second.shape() != n.shape) {
          throw ValidationError(where(n) + " shape " + shape_str(n.shape) +
                                " disagrees with payload " + shape_str(it->second.shape()));
        }
        break;
      }
      case OpKind::Conv2D:
        if (a.stride < 1) throw ValidationError(where(n) + ": stride must be >= 1");
        break;
      case OpKind::MaxPool:
      case OpKind::AvgPool:
      case OpKind::SumPool:
        if (a.window < 1 || a.stride < 1) {
          throw ValidationError(where(n) + ": window and stride must be >= 1");
        }
        break;
      case OpKind::ScaleDown:
        if (a.shift < 0 || a.shift > 62) throw ValidationError(where(n) + ": shift out of range");
        break;
      case OpKind::PublicDiv:
        if (a.divisor < 1) throw ValidationError(where(n) + ": divisor must be >= 1");
        break;
      case OpKind::BatchNorm:
        if (!(a.epsilon >= 0.0)) throw ValidationError(where(n) + ": epsilon must be >= 0");
        break;
      default:
        break;
    }
  }
  if (inputs != 1) throw ValidationError("graph must have exactly one Input node");
  if (g.output < 0 || g.output >= static_cast<int>(g.nodes.size())) {
    throw ValidationError("output id " + std::to_string(g.output) + " is not a node");
  }
  for (const auto& [id, w] : g.weights) {
    if (id < 0 || id >= static_cast<int>(g.nodes.size()) || g.node(id).op != OpKind::Const) {
      throw ValidationError("weight payload for non-Const id " + std::to_string(id));
    }
  }
}

template <typename W>
void infer_shapes_impl(Graph<W>& g) {
  for (auto& n : g.nodes) {
    auto in = [&](std::size_t k) -> const Shape& { return g.node(n.inputs[k]).shape; };
    const auto& a = n.attrs;
    switch (n.op) {
      case OpKind::Input:
        n.shape = g.input_shape;
        break;
      case OpKind::Const:
        if (auto it = g.weights.find(n.id); it != g.weights.end()) n.shape = it->second.shape();
        break;
      case OpKind::MatMul: {
        const auto &x = in(0), &y = in(1);
        if (x.size() != 2 || y.size() != 2 || x[1] != y[0]) {
          throw ShapeError(where(n) + ": cannot multiply " + shape_str(x) + " by " + shape_str(y));
        }
        n.shape = {x[0], y[1]};
        break;
      }
      case OpKind::Add:
      case OpKind::Mul:
        if (!broadcastable(in(0), in(1))) {
          throw ShapeError(where(n) + ": operand shapes " + shape_str(in(0)) + " and " +
                           shape_str(in(1)) + " do not match (only bias broadcast is allowed)");
        }
        n.shape = in(0);
        break;
      case OpKind::Conv2D:
        n.shape = kernels::ConvGeometry::make(in(0), in(1), a.stride, a.padding).output_shape();
        break;
      case OpKind::ReLU:
      case OpKind::ScaleDown:
      case OpKind::PublicDiv:
        n.shape = in(0);
        break;
      case OpKind::MaxPool:
      case OpKind::AvgPool:
      case OpKind::SumPool:
        n.shape = kernels::PoolGeometry::make(in(0), a.window, a.stride).output_shape();
        break;
      case OpKind::BatchNorm: {
        const auto& x = in(0);
        if (x.empty()) throw ShapeError(where(n) + ": scalar input");
        for (std::size_t k = 1; k < 5; ++k) {
          if (in(k) != Shape{x.back()}) {
            throw ShapeError(where(n) + ": parameter " + std::to_string(k) + " has shape " +
                             shape_str(in(k)) + ", expected [" + std::to_string(x.back()) + "]");
          }
        }
        n.shape = x;
        break;
      }
      case OpKind::Reshape:
        if (a.target_shape.empty() || num_elements(a.target_shape) != num_elements(in(0))) {
          throw ShapeError(where(n) + ": cannot reshape " + shape_str(in(0)) + " to " +
                           shape_str(a.target_shape));
        }
        for (auto d : a.target_shape) {
          if (d <= 0) throw ShapeError(where(n) + ": non-positive target dimension");
        }
        n.shape = a.target_shape;
        break;
      case OpKind::ArgMax: {
        const auto& x = in(0);
        if (x.empty()) throw ShapeError(where(n) + ": scalar input");
        n.shape = x.size() == 1 ? Shape{1} : Shape(x.begin(), x.end() - 1);
        break;
      }
    }
  }
}

}  // namespace

std::string_view op_name(OpKind op) { return info(op).name; }

std::optional<OpKind> op_from_name(std::string_view name) {
  for (const auto& oi : kOps) {
    if (oi.name == name) return oi.op;
  }
  return std::nullopt;
}

bool is_float_op(OpKind op) { return info(op).in_float; }
bool is_fixed_op(OpKind op) { return info(op).in_fixed; }

void validate(const HlilGraph& g) { validate_common(g, false, false); }
void validate(const LlilProgram& p, bool allow_missing_weights) {
  validate_common(p, true, allow_missing_weights);
  if (p.scale < 0 || p.scale > 62) throw ValidationError("program scale out of range");
}

void infer_shapes(HlilGraph& g) {
  validate(g);
  infer_shapes_impl(g);
}

void infer_shapes(LlilProgram& p) {
  validate(p, true);
  infer_shapes_impl(p);
}

std::vector<int> infer_scales(const LlilProgram& p) {
  std::vector<int> scale(p.nodes.size(), p.scale);
  for (const auto& n : p.nodes) {
    auto in = [&](std::size_t k) { return scale[static_cast<std::size_t>(n.inputs[k])]; };
    auto& out = scale[static_cast<std::size_t>(n.id)];
    switch (n.op) {
      case OpKind::Input:
      case OpKind::Const:
        out = p.scale;
        break;
      case OpKind::MatMul:
      case OpKind::Conv2D:
      case OpKind::Mul:
        out = in(0) + in(1);
        break;
      case OpKind::ScaleDown:
        out = in(0) - n.attrs.shift;
        break;
      case OpKind::Add:
        if (in(0) != in(1)) {
          throw ScaleMismatchError(where(n) + ": operand scales " + std::to_string(in(0)) +
                                   " and " + std::to_string(in(1)) + " differ");
        }
        out = in(0);
        break;
      case OpKind::ReLU:
      case OpKind::MaxPool:
      case OpKind::ArgMax:
        if (in(0) != p.scale) {
          throw ScaleMismatchError(where(n) + " consumes a value at scale " +
                                   std::to_string(in(0)) + ", expected " +
                                   std::to_string(p.scale));
        }
        out = n.op == OpKind::ArgMax ? 0 : in(0);
        break;
      default:
        out = in(0);
        break;
    }
  }
  return scale;
}

template <typename W>
int GraphBuilder<W>::input(Shape shape, std::string name) {
  graph_.input_shape = shape;
  Node n;
  n.id = static_cast<int>(graph_.nodes.size());
  n.op = OpKind::Input;
  n.name = std::move(name);
  n.shape = std::move(shape);
  graph_.nodes.push_back(std::move(n));
  return graph_.nodes.back().id;
}

template <typename W>
int GraphBuilder<W>::constant(Tensor<W> value, std::string name) {
  Node n;
  n.id = static_cast<int>(graph_.nodes.size());
  n.op = OpKind::Const;
  n.name = std::move(name);
  n.shape = value.shape();
  graph_.weights.emplace(n.id, std::move(value));
  graph_.nodes.push_back(std::move(n));
  return graph_.nodes.back().id;
}

template <typename W>
int GraphBuilder<W>::op(OpKind kind, std::vector<int> inputs, Attrs attrs, std::string name) {
  Node n;
  n.id = static_cast<int>(graph_.nodes.size());
  n.op = kind;
  n.name = std::move(name);
  n.attrs = std::move(attrs);
  n.inputs = std::move(inputs);
  graph_.nodes.push_back(std::move(n));
  graph_.output = graph_.nodes.back().id;
  return graph_.nodes.back().id;
}

template <typename W>
Graph<W> GraphBuilder<W>::build() {
  auto g = std::move(graph_);
  graph_ = {};
  validate_common(g, std::is_same_v<W, Ring>, true);
  infer_shapes_impl(g);
  return g;
}

template class GraphBuilder<float>;
template class GraphBuilder<Ring>;

}  // namespace trio::ir
