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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "trio/kernels/parallel.hpp"
#include "trio/kernels/reference.hpp"

namespace {

using trio::Ring;
using trio::RingTensor;
namespace kernels = trio::kernels;

RingTensor random_tensor(trio::Shape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RingTensor t(std::move(shape));
  for (auto& v : t.data()) v = rng();
  return t;
}

void BM_MatmulReference(benchmark::State& state) {
  const auto n = state.range(0);
  const auto a = random_tensor({n, n}, 1), b = random_tensor({n, n}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::matmul(a, b));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}

void BM_MatmulParallel(benchmark::State& state) {
  const auto n = state.range(0);
  const auto a = random_tensor({n, n}, 1), b = random_tensor({n, n}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul(a, b));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}

kernels::ConvGeometry conv_geometry(std::int64_t m, std::int64_t f) {
  return kernels::ConvGeometry::make({1, m, m, 8}, {f, f, 8, 16}, 1, kernels::Padding::Same);
}

void BM_Im2colReference(benchmark::State& state) {
  const auto m = state.range(0);
  const auto g = conv_geometry(m, 3);
  const auto img = random_tensor({1, m, m, 8}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::im2col(img, g));
}

void BM_Im2colParallel(benchmark::State& state) {
  const auto m = state.range(0);
  const auto g = conv_geometry(m, 3);
  const auto img = random_tensor({1, m, m, 8}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::im2col(img, g));
}

void BM_ConvReference(benchmark::State& state) {
  const auto m = state.range(0);
  const auto g = conv_geometry(m, 3);
  const auto img = random_tensor({1, m, m, 8}, 3), flt = random_tensor({3, 3, 8, 16}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::conv2d_direct(img, flt, g));
}

void BM_ConvParallel(benchmark::State& state) {
  const auto m = state.range(0);
  const auto g = conv_geometry(m, 3);
  const auto img = random_tensor({1, m, m, 8}, 3), flt = random_tensor({3, 3, 8, 16}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::conv2d(img, flt, g));
}

BENCHMARK(BM_MatmulReference)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulParallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Im2colReference)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Im2colParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ConvReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
