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

#include "trio/ir/graph.hpp"

namespace trio::compiler {

// Lowers a floating-point graph to a fixed-point program in which every value
// carries `scale` fractional bits. Weights are quantized; each MatMul, Conv2D
// and folded BatchNorm multiply is followed by ScaleDown(., scale); AvgPool
// becomes SumPool followed by PublicDiv(window^2).
ir::LlilProgram compile_to_llil(const ir::HlilGraph& graph, int scale);

// Static walk confirming that every value outside the immediate output of a
// multiplicative op sits at the program scale (ArgMax yields an unscaled
// index). Throws ScaleMismatchError otherwise.
void check_scale_homogeneity(const ir::LlilProgram& program);

}  // namespace trio::compiler
