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

#include "trio/tensor.hpp"

namespace trio::compiler {

// Largest magnitude a quantized value may take: one product at scale 2s plus
// accumulation must not wrap mod 2^64.
inline constexpr double kGuardBand = 4611686018427387904.0;  // 2^62

// r -> floor(r * 2^s) as a two's-complement ring element. Throws
// OverflowError when |r * 2^s| >= 2^62 or r is not finite.
Ring quantize(float r, int scale);
RingTensor quantize(const FloatTensor& t, int scale);

// x -> signed(x) / 2^s.
double dequantize(Ring x, int scale);
FloatTensor dequantize(const RingTensor& t, int scale);

}  // namespace trio::compiler
