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
#include "trio/kernels/geometry.hpp"

namespace trio::ir {

// Reference semantics for the floating-point graph. Products are accumulated
// in double in row-major order, then rounded to float.
FloatTensor eval_float(const HlilGraph& g, const FloatTensor& input);

// Records whether any intermediate left the |x| < 2^62 guard band. Used by
// the precision sweep; results are still produced (wrapped mod 2^64).
struct OverflowMonitor {
  bool overflowed = false;
  int first_node = -1;
};

// Reference semantics for the fixed-point program: arithmetic wraps mod
// 2^64, ScaleDown is an arithmetic right shift, comparisons are signed and
// PublicDiv is floor division.
RingTensor eval_fixed(const LlilProgram& p, const RingTensor& input,
                      OverflowMonitor* monitor = nullptr);

// Cross-correlation over Z_{2^64}; the oracle for the secure convolution.
RingTensor conv2d_ref(const RingTensor& image, const RingTensor& filter, std::int64_t stride,
                      kernels::Padding padding);

// Index of the first maximum along the last axis, signed comparison for ring
// tensors.
RingTensor argmax_ring(const RingTensor& t);
FloatTensor argmax_float(const FloatTensor& t);

std::int64_t floor_div(std::int64_t a, std::int64_t d);

}  // namespace trio::ir
