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

#include "trio/kernels/geometry.hpp"

#include <algorithm>

namespace trio::kernels {

ConvGeometry ConvGeometry::make(const Shape& image, const Shape& filter, std::int64_t stride,
                                Padding padding) {
  if (image.size() != 4) throw ShapeError("conv2d: image must be NHWC, got " + shape_str(image));
  if (filter.size() != 4) {
    throw ShapeError("conv2d: filter must be [FH,FW,C,K], got " + shape_str(filter));
  }
  if (filter[2] != image[3]) {
    throw ShapeError("conv2d: filter channels " + std::to_string(filter[2]) +
                     " != image channels " + std::to_string(image[3]));
  }
  if (stride < 1) throw ValidationError("conv2d: stride must be >= 1");
  ConvGeometry g;
  g.batch = image[0];
  g.in_h = image[1];
  g.in_w = image[2];
  g.channels = image[3];
  g.filter_h = filter[0];
  g.filter_w = filter[1];
  g.out_channels = filter[3];
  g.stride = stride;
  if (padding == Padding::Valid) {
    if (g.filter_h > g.in_h || g.filter_w > g.in_w) {
      throw ShapeError("conv2d: filter " + shape_str(filter) + " larger than image " +
                       shape_str(image));
    }
    g.out_h = (g.in_h - g.filter_h) / stride + 1;
    g.out_w = (g.in_w - g.filter_w) / stride + 1;
  } else {
    g.out_h = (g.in_h + stride - 1) / stride;
    g.out_w = (g.in_w + stride - 1) / stride;
    g.pad_top = std::max<std::int64_t>((g.out_h - 1) * stride + g.filter_h - g.in_h, 0) / 2;
    g.pad_left = std::max<std::int64_t>((g.out_w - 1) * stride + g.filter_w - g.in_w, 0) / 2;
  }
  return g;
}

PoolGeometry PoolGeometry::make(const Shape& image, std::int64_t window, std::int64_t stride) {
  if (image.size() != 4) throw ShapeError("pool: input must be NHWC, got " + shape_str(image));
  if (window < 1 || stride < 1) throw ValidationError("pool: window and stride must be >= 1");
  PoolGeometry g;
  g.batch = image[0];
  g.in_h = image[1];
  g.in_w = image[2];
  g.channels = image[3];
  g.window = window;
  g.stride = stride;
  if (window > g.in_h || window > g.in_w) {
    throw ShapeError("pool: window " + std::to_string(window) + " larger than input " +
                     shape_str(image));
  }
  g.out_h = (g.in_h - window) / stride + 1;
  g.out_w = (g.in_w - window) / stride + 1;
  return g;
}

}  // namespace trio::kernels
