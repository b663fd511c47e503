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

#include "trio/compiler/lower.hpp"

#include <cmath>
#include <set>

#include "trio/compiler/quantize.hpp"

namespace trio::compiler {

using ir::Attrs;
using ir::Node;
using ir::OpKind;

namespace {

class Emitter {
 public:
  explicit Emitter(ir::LlilProgram& p) : p_(p) {}

  int emit(OpKind op, std::vector<int> inputs, std::string name, Attrs attrs = {}) {
    Node n;
    n.id = static_cast<int>(p_.nodes.size());
    n.op = op;
    n.name = std::move(name);
    n.attrs = std::move(attrs);
    n.inputs = std::move(inputs);
    p_.nodes.push_back(std::move(n));
    return p_.nodes.back().id;
  }

  int constant(RingTensor value, std::string name) {
    const int id = emit(OpKind::Const, {}, std::move(name));
    p_.nodes.back().shape = value.shape();
    p_.weights.emplace(id, std::move(value));
    return id;
  }

  int scale_down(int operand, int shift) {
    Attrs a;
    a.shift = shift;
    return emit(OpKind::ScaleDown, {operand}, p_.node(operand).name, a);
  }

 private:
  ir::LlilProgram& p_;
};

}  // namespace

ir::LlilProgram compile_to_llil(const ir::HlilGraph& graph, int scale) {
  if (scale < 0 || scale > 62) throw ValidationError("compile: scale must be in [0, 62]");
  ir::HlilGraph g = graph;
  ir::infer_shapes(g);

  // BatchNorm parameters are folded away; keep a Const only if something
  // else reads it.
  std::set<int> live_consts;
  for (const auto& n : g.nodes) {
    for (std::size_t k = 0; k < n.inputs.size(); ++k) {
      if (n.op == OpKind::BatchNorm && k > 0) {
        if (g.node(n.inputs[k]).op != OpKind::Const) {
          throw ValidationError("compile: BatchNorm parameters must be constants");
        }
        continue;
      }
      live_consts.insert(n.inputs[k]);
    }
  }
  live_consts.insert(g.output);

  ir::LlilProgram p;
  p.scale = scale;
  p.input_shape = g.input_shape;
  Emitter em(p);
  std::vector<int> remap(g.nodes.size(), -1);
  auto src = [&](const Node& n, std::size_t k) { return remap[static_cast<std::size_t>(n.inputs[k])]; };

  for (const auto& n : g.nodes) {
    int out = -1;
    switch (n.op) {
      case OpKind::Input:
        out = em.emit(OpKind::Input, {}, n.name);
        break;
      case OpKind::Const:
        if (live_consts.count(n.id)) out = em.constant(quantize(g.weights.at(n.id), scale), n.name);
        break;
      case OpKind::MatMul:
      case OpKind::Conv2D:
        out = em.scale_down(em.emit(n.op, {src(n, 0), src(n, 1)}, n.name, n.attrs), scale);
        break;
      case OpKind::Add:
        out = em.emit(OpKind::Add, {src(n, 0), src(n, 1)}, n.name);
        break;
      case OpKind::ReLU:
      case OpKind::MaxPool:
      case OpKind::Reshape:
      case OpKind::ArgMax:
        out = em.emit(n.op, {src(n, 0)}, n.name, n.attrs);
        break;
      case OpKind::AvgPool: {
        const int sum = em.emit(OpKind::SumPool, {src(n, 0)}, n.name, n.attrs);
        Attrs div;
        div.divisor = n.attrs.window * n.attrs.window;
        out = em.emit(OpKind::PublicDiv, {sum}, n.name, div);
        break;
      }
      case OpKind::BatchNorm: {
        // y = x * k + b with k = gamma / sqrt(var + eps), b = beta - mean * k.
        const auto& gamma = g.weights.at(n.inputs[1]);
        const auto& beta = g.weights.at(n.inputs[2]);
        const auto& mean = g.weights.at(n.inputs[3]);
        const auto& var = g.weights.at(n.inputs[4]);
        FloatTensor k(gamma.shape()), b(gamma.shape());
        for (std::int64_t c = 0; c < gamma.size(); ++c) {
          const double kc = gamma[c] / std::sqrt(static_cast<double>(var[c]) + n.attrs.epsilon);
          k[c] = static_cast<float>(kc);
          b[c] = static_cast<float>(beta[c] - mean[c] * kc);
        }
        const std::string base = n.name.empty() ? "bn" + std::to_string(n.id) : n.name;
        const int kc = em.constant(quantize(k, scale), base + "_scale");
        const int mul = em.scale_down(em.emit(OpKind::Mul, {src(n, 0), kc}, base), scale);
        const int bc = em.constant(quantize(b, scale), base + "_shift");
        out = em.emit(OpKind::Add, {mul, bc}, base);
        break;
      }
      default:
        throw ValidationError("compile: unsupported op " + std::string(ir::op_name(n.op)));
    }
    remap[static_cast<std::size_t>(n.id)] = out;
  }
  p.output = remap[static_cast<std::size_t>(g.output)];
  ir::infer_shapes(p);
  check_scale_homogeneity(p);
  return p;
}

void check_scale_homogeneity(const ir::LlilProgram& program) {
  const auto scales = ir::infer_scales(program);
  for (const auto& n : program.nodes) {
    const int s = scales[static_cast<std::size_t>(n.id)];
    const bool multiplicative = n.op == OpKind::MatMul || n.op == OpKind::Conv2D || n.op == OpKind::Mul;
    const int expected = multiplicative ? 2 * program.scale : n.op == OpKind::ArgMax ? 0 : program.scale;
    if (s != expected) {
      throw ScaleMismatchError("node " + std::to_string(n.id) + " (" +
                               std::string(ir::op_name(n.op)) + ") carries scale " +
                               std::to_string(s) + ", expected " + std::to_string(expected));
    }
  }
}

}  // namespace trio::compiler
