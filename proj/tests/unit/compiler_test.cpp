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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "trio/compiler/lower.hpp"
#include "trio/compiler/models.hpp"
#include "trio/compiler/quantize.hpp"
#include "trio/compiler/sweep.hpp"
#include "trio/ir/interpreter.hpp"
#include "trio/ir/printer.hpp"

namespace trio::compiler {
namespace {

using ir::OpKind;

int count_ops(const ir::LlilProgram& p, OpKind op) {
  int c = 0;
  for (const auto& n : p.nodes) c += n.op == op;
  return c;
}

// Logistic regression with weights uniform in [-1, 1].
ir::HlilGraph uniform_logistic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  FloatTensor w({784, 10}), b({10});
  for (auto& v : w.data()) v = u(rng);
  for (auto& v : b.data()) v = u(rng);
  ir::GraphBuilder<float> g;
  const int x = g.input({1, 784}, "x");
  const int wi = g.constant(w, "W");
  const int bi = g.constant(b, "b");
  const int m = g.op(OpKind::MatMul, {x, wi}, {}, "xW");
  const int a = g.op(OpKind::Add, {m, bi}, {}, "xWb");
  g.op(OpKind::ArgMax, {a}, {}, "out");
  return g.build();
}

std::vector<FloatTensor> inputs(const Shape& shape, int n, std::uint64_t seed) {
  std::vector<FloatTensor> out;
  for (int i = 0; i < n; ++i) out.push_back(models::random_input(shape, seed + i));
  return out;
}

TEST(Quantize, Examples) {
  EXPECT_EQ(quantize(0.5f, 15), 16384u);
  EXPECT_EQ(quantize(-1.25f, 4), to_ring(-20));
  EXPECT_EQ(quantize(-1.25f, 4), ~Ring{0} - 19);
  EXPECT_EQ(quantize(0.1f, 15), 3276u);
  EXPECT_EQ(quantize(-0.1f, 15), to_ring(-3277));
}

TEST(Quantize, GuardBand) {
  EXPECT_THROW(quantize(1.0f, 62), OverflowError);
  EXPECT_THROW(quantize(-2.0f, 61), OverflowError);
  EXPECT_NO_THROW(quantize(0.99f, 61));
  EXPECT_THROW(quantize(1.0f, 63), ValidationError);
}

TEST(Dequantize, Examples) {
  EXPECT_EQ(dequantize(16384, 15), 0.5);
  EXPECT_EQ(dequantize(~Ring{0} - 19, 4), -1.25);
}

TEST(Dequantize, RoundTripWithinOneUlpOfScale) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<float> u(-1000.0f, 1000.0f);
  for (int i = 0; i < 10000; ++i) {
    const float r = u(rng);
    EXPECT_LE(std::fabs(dequantize(quantize(r, 15), 15) - r), std::ldexp(1.0, -15));
  }
}

TEST(Lower, LogisticMatchesReferenceShape) {
  const auto p = compile_to_llil(models::logistic_regression(1), 15);
  EXPECT_EQ(p.scale, 15);
  EXPECT_EQ(ir::to_text(p),
            "xW = MatMul(x, W);\nScaleDown(xW, 15);\nxWb = MatAdd(xW, b);\noutput(ArgMax(xWb));\n");
  const auto& w = p.weights.begin()->second;
  EXPECT_EQ(w.shape(), (Shape{784, 10}));
}

TEST(Lower, NoScaleDownWithoutProducts) {
  ir::GraphBuilder<float> g;
  const int x = g.input({1, 4});
  const int b = g.constant(FloatTensor({4}, 0.25f), "b");
  const int a = g.op(OpKind::Add, {x, b});
  g.op(OpKind::ReLU, {a});
  const auto p = compile_to_llil(g.build(), 12);
  EXPECT_EQ(count_ops(p, OpKind::ScaleDown), 0);
}

TEST(Lower, OneScaleDownPerConv) {
  ir::GraphBuilder<float> g;
  int x = g.input({1, 8, 8, 1});
  for (int i = 0; i < 3; ++i) {
    ir::Attrs a;
    a.padding = kernels::Padding::Same;
    const int k = g.constant(FloatTensor({3, 3, 1, 1}, 0.1f), "k" + std::to_string(i));
    x = g.op(OpKind::Conv2D, {x, k}, a);
    x = g.op(OpKind::ReLU, {x});
  }
  const auto p = compile_to_llil(g.build(), 12);
  EXPECT_EQ(count_ops(p, OpKind::Conv2D), 3);
  EXPECT_EQ(count_ops(p, OpKind::ScaleDown), 3);
  for (const auto& n : p.nodes) {
    if (n.op == OpKind::ScaleDown) {
      EXPECT_EQ(p.node(n.inputs[0]).op, OpKind::Conv2D);
      EXPECT_EQ(n.attrs.shift, 12);
    }
  }
}

TEST(Lower, BatchNormFoldsAndAvgPoolDivides) {
  const auto g = models::small_cnn(4);
  const auto p = compile_to_llil(g, 12);
  EXPECT_EQ(count_ops(p, OpKind::BatchNorm), 0);
  EXPECT_EQ(count_ops(p, OpKind::AvgPool), 0);
  EXPECT_EQ(count_ops(p, OpKind::Mul), 1);
  EXPECT_EQ(count_ops(p, OpKind::SumPool), 1);
  EXPECT_EQ(count_ops(p, OpKind::PublicDiv), 1);
  for (const auto& n : p.nodes) {
    if (n.op == OpKind::PublicDiv) {
      EXPECT_EQ(n.attrs.divisor, 4);
    }
  }
  EXPECT_EQ(count_ops(p, OpKind::ScaleDown), 3);  // conv, folded multiply, matmul
  EXPECT_NO_THROW(check_scale_homogeneity(p));

  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = models::random_input({1, 8, 8, 1}, 50 + i);
    agree += static_cast<Ring>(ir::eval_float(g, x)[0]) == ir::eval_fixed(p, quantize(x, 12))[0];
  }
  EXPECT_GE(agree, 97);
}

TEST(Lower, ScaleHomogeneity) {
  for (int s : {8, 15, 20}) {
    const auto p = compile_to_llil(models::two_layer(3), s);
    EXPECT_NO_THROW(check_scale_homogeneity(p));
    const auto scales = ir::infer_scales(p);
    for (const auto& n : p.nodes) {
      if (n.op == OpKind::ScaleDown) {
        EXPECT_EQ(scales[static_cast<std::size_t>(n.id)], s);
      }
    }
  }
}

TEST(Lower, ErrorShrinksWithScale) {
  const auto g = models::two_layer(8, 16, 32, 10, 0.5f);
  // Same model without the final ArgMax so the raw outputs can be compared.
  auto raw = g;
  raw.nodes.pop_back();
  raw.output = static_cast<int>(raw.nodes.size()) - 1;
  const auto xs = inputs({1, 16}, 20, 300);
  double prev = 1e300;
  for (int s = 4; s <= 20; s += 4) {
    const auto p = compile_to_llil(raw, s);
    double err = 0.0;
    for (const auto& x : xs) {
      const auto f = ir::eval_float(raw, x);
      const auto q = dequantize(ir::eval_fixed(p, quantize(x, s)), s);
      for (std::int64_t i = 0; i < f.size(); ++i) err = std::max(err, double(std::fabs(f[i] - q[i])));
    }
    EXPECT_LT(err, prev) << "s=" << s;
    prev = err;
  }
}

TEST(Sweep, SingleScale) {
  const auto g = models::logistic_regression(2);
  SweepConfig cfg;
  cfg.s_min = cfg.s_max = 15;
  cfg.calibration = make_calibration(g, inputs({1, 784}, 5, 10));
  const auto r = sweep_scale(g, cfg);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.chosen_scale, 15);
}

TEST(Sweep, UniformWeightLogisticPicksModerateScale) {
  const auto g = uniform_logistic(1);
  SweepConfig cfg;
  cfg.s_min = 1;
  cfg.s_max = 30;
  cfg.calibration = make_calibration(g, inputs({1, 784}, 100, 1000));
  const auto r = sweep_scale(g, cfg);
  EXPECT_GE(r.chosen_scale, 10);
  EXPECT_LE(r.chosen_scale, 20);
  EXPECT_GE(r.at(r.chosen_scale).metric, 0.99);
  EXPECT_FALSE(r.at(r.chosen_scale).overflow);
}

TEST(Sweep, LargeNormsOverflowAtTop) {
  auto g = uniform_logistic(2);
  for (auto& [id, w] : g.weights) {
    for (auto& v : w.data()) v *= 4096.0f;
  }
  SweepConfig cfg;
  cfg.s_min = 10;
  cfg.s_max = 30;
  cfg.calibration = make_calibration(g, inputs({1, 784}, 20, 77));
  const auto r = sweep_scale(g, cfg);
  EXPECT_TRUE(r.at(30).overflow);
  EXPECT_LT(r.chosen_scale, 30);
  EXPECT_FALSE(r.at(r.chosen_scale).overflow);
}

TEST(Sweep, Deterministic) {
  const auto g = models::two_layer(5);
  SweepConfig cfg;
  cfg.calibration = make_calibration(g, inputs({1, 16}, 50, 40));
  const auto a = sweep_scale(g, cfg);
  const auto b = sweep_scale(g, cfg);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.entries.size(), 17u);
}

TEST(Sweep, MaxAbsErrorMetricPrefersLargerScales) {
  auto g = models::two_layer(6);
  g.nodes.pop_back();
  g.output = static_cast<int>(g.nodes.size()) - 1;
  SweepConfig cfg;
  cfg.metric = SweepMetric::MaxAbsError;
  cfg.s_min = 4;
  cfg.s_max = 20;
  cfg.calibration = make_calibration(g, inputs({1, 16}, 20, 90));
  const auto r = sweep_scale(g, cfg);
  EXPECT_LT(r.at(20).metric, r.at(4).metric);
  EXPECT_GE(r.chosen_scale, 16);
}

TEST(Sweep, RejectsBadConfig) {
  const auto g = models::two_layer(5);
  SweepConfig cfg;
  EXPECT_THROW(sweep_scale(g, cfg), ValidationError);
  cfg.calibration = make_calibration(g, inputs({1, 16}, 2, 1));
  cfg.s_max = 31;
  EXPECT_THROW(sweep_scale(g, cfg), ValidationError);
  cfg.s_min = 0;
  cfg.s_max = 10;
  EXPECT_THROW(sweep_scale(g, cfg), ValidationError);
}

}  // namespace
}  // namespace trio::compiler
