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

// OpenMP kernels shared by the interpreters and the protocol engine. Every
// kernel here has a serial twin in reference.hpp with the same signature; the
// two must agree bit-for-bit (tests/unit/kernels_test.cpp).
//
// Float kernels accumulate in double, in ascending inner-index order, so the
// parallel and serial paths produce identical floats.

#include <span>

#include "trio/kernels/geometry.hpp"
#include "trio/tensor.hpp"

namespace trio::kernels {

// c[rows x cols] = a[rows x inner] * b[inner x cols]. Ring math wraps mod 2^64.
template <typename T>
void matmul(std::span<const T> a, std::span<const T> b, std::span<T> c, std::int64_t rows,
            std::int64_t inner, std::int64_t cols);

template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b);

// [num_patches, patch_size] patch matrix; padded cells are zero.
template <typename T>
Tensor<T> im2col(const Tensor<T>& image, const ConvGeometry& g);

// Convolution as im2col(image) * filter viewed as [patch_size, K].
template <typename T>
Tensor<T> conv2d(const Tensor<T>& image, const Tensor<T>& filter, const ConvGeometry& g);

// [num_windows, window_size] matrix of pooling windows; row order matches the
// NHWC output order.
template <typename T>
Tensor<T> pool_windows(const Tensor<T>& image, const PoolGeometry& g);

// Element-wise ring helpers.
void add_inplace(std::span<Ring> dst, std::span<const Ring> src);
void sub_inplace(std::span<Ring> dst, std::span<const Ring> src);
void mul_inplace(std::span<Ring> dst, std::span<const Ring> src);

RingTensor add(const RingTensor& a, const RingTensor& b);
RingTensor sub(const RingTensor& a, const RingTensor& b);

}  // namespace trio::kernels
