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

#include "trio/compiler/models.hpp"

#include <random>

namespace trio::compiler::models {

namespace {

FloatTensor normal(const Shape& shape, std::mt19937_64& rng, float stddev, float mean = 0.0f) {
  std::normal_distribution<float> dist(mean, stddev);
  FloatTensor t(shape);
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

}  // namespace

ir::HlilGraph logistic_regression(std::uint64_t seed, std::int64_t features, std::int64_t classes) {
  std::mt19937_64 rng(seed);
  ir::GraphBuilder<float> b;
  const int x = b.input({1, features}, "x");
  const int w = b.constant(normal({features, classes}, rng, 0.05f), "W");
  const int bias = b.constant(normal({classes}, rng, 0.1f), "b");
  const int xw = b.op(ir::OpKind::MatMul, {x, w}, {}, "xW");
  const int xwb = b.op(ir::OpKind::Add, {xw, bias}, {}, "xWb");
  b.op(ir::OpKind::ArgMax, {xwb}, {}, "out");
  return b.build();
}

ir::HlilGraph two_layer(std::uint64_t seed, std::int64_t in, std::int64_t hidden,
                        std::int64_t classes, float weight_std) {
  std::mt19937_64 rng(seed);
  ir::GraphBuilder<float> b;
  const int x = b.input({1, in}, "x");
  const int w1 = b.constant(normal({in, hidden}, rng, weight_std), "W1");
  const int b1 = b.constant(normal({hidden}, rng, weight_std), "b1");
  const int w2 = b.constant(normal({hidden, classes}, rng, weight_std), "W2");
  const int b2 = b.constant(normal({classes}, rng, weight_std), "b2");
  const int h = b.op(ir::OpKind::MatMul, {x, w1}, {}, "xW1");
  const int hb = b.op(ir::OpKind::Add, {h, b1}, {}, "h");
  const int a = b.op(ir::OpKind::ReLU, {hb}, {}, "a");
  const int o = b.op(ir::OpKind::MatMul, {a, w2}, {}, "aW2");
  const int ob = b.op(ir::OpKind::Add, {o, b2}, {}, "logits");
  b.op(ir::OpKind::ArgMax, {ob}, {}, "out");
  return b.build();
}

ir::HlilGraph small_cnn(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ir::GraphBuilder<float> b;
  const int x = b.input({1, 8, 8, 1}, "x");
  const int k = b.constant(normal({3, 3, 1, 4}, rng, 0.4f), "K");
  ir::Attrs conv;
  conv.padding = kernels::Padding::Same;
  const int c = b.op(ir::OpKind::Conv2D, {x, k}, conv, "conv");
  std::uniform_real_distribution<float> var(0.5f, 1.5f);
  FloatTensor variance({4});
  for (auto& v : variance.data()) v = var(rng);
  const int gamma = b.constant(normal({4}, rng, 0.2f, 1.0f), "gamma");
  const int beta = b.constant(normal({4}, rng, 0.1f), "beta");
  const int mean = b.constant(normal({4}, rng, 0.1f), "mean");
  const int vr = b.constant(variance, "var");
  const int bn = b.op(ir::OpKind::BatchNorm, {c, gamma, beta, mean, vr}, {}, "bn");
  const int r = b.op(ir::OpKind::ReLU, {bn}, {}, "relu");
  ir::Attrs pool;
  pool.window = 2;
  pool.stride = 2;
  const int mp = b.op(ir::OpKind::MaxPool, {r}, pool, "mp");
  const int ap = b.op(ir::OpKind::AvgPool, {mp}, pool, "ap");
  ir::Attrs flat;
  flat.target_shape = {1, 16};
  const int f = b.op(ir::OpKind::Reshape, {ap}, flat, "flat");
  const int w = b.constant(normal({16, 10}, rng, 0.5f), "W");
  const int bias = b.constant(normal({10}, rng, 0.1f), "b");
  const int fw = b.op(ir::OpKind::MatMul, {f, w}, {}, "fW");
  const int fwb = b.op(ir::OpKind::Add, {fw, bias}, {}, "logits");
  b.op(ir::OpKind::ArgMax, {fwb}, {}, "out");
  return b.build();
}

FloatTensor random_input(const Shape& shape, std::uint64_t seed, float amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-amplitude, amplitude);
  FloatTensor t(shape);
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

}  // namespace trio::compiler::models
