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

// Small synthetic models with seeded random weights.

#include <cstdint>

#include "trio/ir/graph.hpp"

namespace trio::compiler::models {

// x[1,features] -> MatMul W -> Add b -> ArgMax.
ir::HlilGraph logistic_regression(std::uint64_t seed, std::int64_t features = 784,
                                  std::int64_t classes = 10);

// x[1,in] -> MatMul -> Add -> ReLU -> MatMul -> Add -> ArgMax. Weights are
// normal with standard deviation `weight_std`.
ir::HlilGraph two_layer(std::uint64_t seed, std::int64_t in = 16, std::int64_t hidden = 32,
                        std::int64_t classes = 10, float weight_std = 0.5f);

// x[1,8,8,1] -> Conv2D 3x3x4 SAME -> BatchNorm -> ReLU -> MaxPool 2 ->
// AvgPool 2 -> Reshape -> MatMul -> Add -> ArgMax.
ir::HlilGraph small_cnn(std::uint64_t seed);

// Values uniform in [-amplitude, amplitude].
FloatTensor random_input(const Shape& shape, std::uint64_t seed, float amplitude = 1.0f);

}  // namespace trio::compiler::models
