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

// Straightforward single-threaded kernels. They are the oracle for the
// OpenMP versions and for the protocol engine, and are kept deliberately
// naive: loops follow the textbook definition with row-major accumulation.

#include <span>

#include "trio/kernels/geometry.hpp"
#include "trio/tensor.hpp"

namespace trio::kernels::reference {

template <typename T>
void matmul(std::span<const T> a, std::span<const T> b, std::span<T> c, std::int64_t rows,
            std::int64_t inner, std::int64_t cols);

template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b);

template <typename T>
Tensor<T> im2col(const Tensor<T>& image, const ConvGeometry& g);

// Direct cross-correlation, no kernel flip, no im2col.
template <typename T>
Tensor<T> conv2d_direct(const Tensor<T>& image, const Tensor<T>& filter, const ConvGeometry& g);

template <typename T>
Tensor<T> pool_windows(const Tensor<T>& image, const PoolGeometry& g);

}  // namespace trio::kernels::reference
