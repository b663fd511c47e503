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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trio/kernels/geometry.hpp"
#include "trio/tensor.hpp"

namespace trio::ir {

enum class OpKind : std::uint8_t {
  Input,
  Const,
  MatMul,
  Add,
  Conv2D,
  ReLU,
  MaxPool,
  AvgPool,
  BatchNorm,
  Reshape,
  ArgMax,
  // Fixed-point only.
  ScaleDown,
  Mul,
  SumPool,
  PublicDiv,
};

std::string_view op_name(OpKind op);
std::optional<OpKind> op_from_name(std::string_view name);

// True for ops that may appear in a floating-point graph.
bool is_float_op(OpKind op);
// True for ops that may appear in a fixed-point program.
bool is_fixed_op(OpKind op);

struct Attrs {
  std::int64_t stride = 1;
  kernels::Padding padding = kernels::Padding::Valid;
  std::int64_t window = 1;
  Shape target_shape;       // Reshape
  double epsilon = 1e-3;    // BatchNorm
  int shift = 0;            // ScaleDown
  std::int64_t divisor = 1; // PublicDiv

  bool operator==(const Attrs&) const = default;
};

struct Node {
  int id = 0;
  OpKind op = OpKind::Input;
  std::string name;
  Attrs attrs;
  std::vector<int> inputs;
  Shape shape;  // filled by infer_shapes (Const/Input carry it from the start)

  bool operator==(const Node&) const = default;
};

// A node list in topological order where nodes[i].id == i, plus constant
// payloads keyed by node id. Weight type is float for the high-level graph
// and ring elements for the lowered program.
template <typename W>
struct Graph {
  std::vector<Node> nodes;
  std::map<int, Tensor<W>> weights;
  Shape input_shape;
  int output = -1;

  const Node& node(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
  Node& node(int id) { return nodes.at(static_cast<std::size_t>(id)); }
  const Node& output_node() const { return node(output); }

  bool operator==(const Graph&) const = default;
};

using HlilGraph = Graph<float>;

struct LlilProgram : Graph<Ring> {
  int scale = 0;

  bool operator==(const LlilProgram&) const = default;
};

// Structural checks shared by both graph kinds: ids are dense and ordered,
// every input refers to an earlier node, arities and attributes are legal,
// every Const with weights present has a payload of matching shape.
// `allow_missing_weights` admits helper-party programs that carry structure
// only.
void validate(const HlilGraph& g);
void validate(const LlilProgram& p, bool allow_missing_weights = false);

// Fills Node::shape for every node. Throws ShapeError on mismatch.
void infer_shapes(HlilGraph& g);
void infer_shapes(LlilProgram& p);

// Per-node fixed-point scale (fractional bits). Multiplicative ops produce
// the sum of their operand scales; ScaleDown subtracts its shift. Throws
// ScaleMismatchError when Add operands differ or when a comparison-based op
// (ReLU, MaxPool, ArgMax) consumes a value not at the program scale.
std::vector<int> infer_scales(const LlilProgram& p);

// Incremental construction, used by tests and the synthetic model zoo.
template <typename W>
class GraphBuilder {
 public:
  int input(Shape shape, std::string name = "x");
  int constant(Tensor<W> value, std::string name = "");
  int op(OpKind kind, std::vector<int> inputs, Attrs attrs = {}, std::string name = "");
  void set_output(int id) { graph_.output = id; }
  Graph<W> build();

 private:
  Graph<W> graph_;
};

}  // namespace trio::ir
