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

#include "trio/tensor.hpp"

namespace trio::kernels {

enum class Padding : std::uint8_t { Valid, Same };

// Geometry of an NHWC convolution with an [FH, FW, C, K] filter. SAME pads
// with zeros, splitting the total pad as TensorFlow does (extra row/col at the
// bottom/right).
struct ConvGeometry {
  std::int64_t batch = 1;
  std::int64_t in_h = 0, in_w = 0, channels = 1;
  std::int64_t filter_h = 0, filter_w = 0, out_channels = 1;
  std::int64_t stride = 1;
  std::int64_t out_h = 0, out_w = 0;
  std::int64_t pad_top = 0, pad_left = 0;

  static ConvGeometry make(const Shape& image, const Shape& filter, std::int64_t stride,
                           Padding padding);

  std::int64_t patch_size() const { return filter_h * filter_w * channels; }
  std::int64_t num_patches() const { return batch * out_h * out_w; }
  Shape output_shape() const { return {batch, out_h, out_w, out_channels}; }
};

// VALID k x k pooling windows over an NHWC tensor.
struct PoolGeometry {
  std::int64_t batch = 1, in_h = 0, in_w = 0, channels = 1;
  std::int64_t window = 1, stride = 1;
  std::int64_t out_h = 0, out_w = 0;

  static PoolGeometry make(const Shape& image, std::int64_t window, std::int64_t stride);

  std::int64_t window_size() const { return window * window; }
  std::int64_t num_windows() const { return batch * out_h * out_w * channels; }
  Shape output_shape() const { return {batch, out_h, out_w, channels}; }
};

}  // namespace trio::kernels
