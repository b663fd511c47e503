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

#include "trio/compiler/quantize.hpp"

#include <cmath>
#include <string>

namespace trio::compiler {

Ring quantize(float r, int scale) {
  if (scale < 0 || scale > 62) throw ValidationError("quantize: scale must be in [0, 62]");
  // r * 2^s is exact in double for any float r.
  const double v = std::floor(std::ldexp(static_cast<double>(r), scale));
  if (!std::isfinite(v) || std::fabs(v) >= kGuardBand) {
    throw OverflowError("quantize: " + std::to_string(r) + " * 2^" + std::to_string(scale) +
                        " leaves the 2^62 guard band");
  }
  return to_ring(static_cast<std::int64_t>(v));
}

RingTensor quantize(const FloatTensor& t, int scale) {
  RingTensor out(t.shape());
  for (std::int64_t i = 0; i < t.size(); ++i) out[i] = quantize(t[i], scale);
  return out;
}

double dequantize(Ring x, int scale) {
  return std::ldexp(static_cast<double>(to_signed(x)), -scale);
}

FloatTensor dequantize(const RingTensor& t, int scale) {
  FloatTensor out(t.shape());
  for (std::int64_t i = 0; i < t.size(); ++i) out[i] = static_cast<float>(dequantize(t[i], scale));
  return out;
}

}  // namespace trio::compiler
