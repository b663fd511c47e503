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

#include "trio/ir/printer.hpp"

#include <sstream>

namespace trio::ir {

namespace {

std::string value_name(const Node& n) {
  return n.name.empty() ? "t" + std::to_string(n.id) : n.name;
}

std::string call_name(OpKind op) {
  return op == OpKind::Add ? "MatAdd" : std::string(op_name(op));
}

std::string attr_suffix(const Node& n) {
  const auto& a = n.attrs;
  std::ostringstream os;
  switch (n.op) {
    case OpKind::Conv2D:
      os << ", stride=" << a.stride << ", " << (a.padding == kernels::Padding::Same ? "SAME" : "VALID");
      break;
    case OpKind::MaxPool:
    case OpKind::AvgPool:
    case OpKind::SumPool:
      os << ", window=" << a.window << ", stride=" << a.stride;
      break;
    case OpKind::Reshape:
      os << ", " << shape_str(a.target_shape);
      break;
    case OpKind::PublicDiv:
      os << ", " << a.divisor;
      break;
    case OpKind::ScaleDown:
      os << ", " << a.shift;
      break;
    default:
      break;
  }
  return os.str();
}

template <typename W>
std::string render(const Graph<W>& g) {
  std::ostringstream os;
  for (const auto& n : g.nodes) {
    if (n.op == OpKind::Input || n.op == OpKind::Const) continue;
    std::string args;
    for (std::size_t k = 0; k < n.inputs.size(); ++k) {
      if (k) args += ", ";
      args += value_name(g.node(n.inputs[k]));
    }
    const auto call = call_name(n.op) + "(" + args + attr_suffix(n) + ")";
    const bool in_place = n.op == OpKind::ScaleDown && value_name(n) == value_name(g.node(n.inputs[0]));
    if (n.id == g.output) {
      os << "output(" << call << ");\n";
    } else if (in_place) {
      os << call << ";\n";
    } else {
      os << value_name(n) << " = " << call << ";\n";
    }
  }
  return os.str();
}

}  // namespace

std::string to_text(const HlilGraph& g) { return render(g); }
std::string to_text(const LlilProgram& p) { return render(p); }

}  // namespace trio::ir
