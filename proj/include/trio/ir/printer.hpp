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

#include <string>

#include "trio/ir/graph.hpp"

namespace trio::ir {

// One statement per line, constants and the input elided:
//   xW = MatMul(x, W);
//   ScaleDown(xW, 15);
//   xWb = MatAdd(xW, b);
//   output(ArgMax(xWb));
std::string to_text(const HlilGraph& g);
std::string to_text(const LlilProgram& p);

}  // namespace trio::ir
