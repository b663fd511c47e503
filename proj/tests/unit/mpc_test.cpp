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

#include <random>

#include "oracles.hpp"
#include "trio/errors.hpp"
#include "trio/ir/interpreter.hpp"
#include "trio/kernels/reference.hpp"
#include "trio/mpc/beaver.hpp"
#include "trio/mpc/compare.hpp"
#include "trio/mpc/executor.hpp"
#include "trio/mpc/modring.hpp"
#include "trio/mpc/nonlinear.hpp"
#include "trio/mpc/truncate.hpp"
#include "trio/net/mesh.hpp"

namespace trio::mpc {
namespace {

using net::Phase;
using testing::Shared;

RingTensor vec(std::initializer_list<std::int64_t> v) {
  RingTensor t({static_cast<std::int64_t>(v.size())});
  std::int64_t i = 0;
  for (auto x : v) t[i++] = to_ring(x);
  return t;
}

std::vector<std::int64_t> signed_of(const RingTensor& t) {
  std::vector<std::int64_t> out;
  for (auto v : t.data()) out.push_back(to_signed(v));
  return out;
}

struct Mesh {
  explicit Mesh(net::ProtocolFlags flags = {}, std::uint64_t seed = 1)
      : ctxs(net::memory_mesh(flags, seed)) {}

  template <typename Fn>
  RingTensor open(Fn fn) {
    return testing::open(net::run_parties(ctxs, fn));
  }

  std::vector<net::CommReport> reports() const {
    return {ctxs[0].report(), ctxs[1].report(), ctxs[2].report()};
  }

  std::array<net::PartyContext, 3> ctxs;
};

std::uint64_t beaver_elements(const std::vector<net::CommReport>& r) {
  return net::total_sent_elements(r, {Phase::BeaverE, Phase::BeaverF, Phase::BeaverC});
}

TEST(Sharing, SplitsAdditively) {
  RingTensor x0({1}, {7}), x({1}, {42});
  RingTensor x1({1}, {x[0] - x0[0]});
  EXPECT_EQ(x1[0], 35u);
  EXPECT_EQ(reconstruct(x0, x1), x);
}

TEST(Sharing, ReconstructRoundTrips) {
  crypto::PrfKey key(crypto::derive_key(3, "share"));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto x = testing::random_ring({1 + t % 7, 3}, rng);
    auto tape = key.open(static_cast<std::uint64_t>(t));
    const auto [s0, s1] = share(x, tape);
    EXPECT_EQ(reconstruct(s0, s1), x);
  }
}

TEST(Sharing, ZeroGivesNegatedMask) {
  crypto::PrfKey key(crypto::derive_key(3, "share"));
  auto tape = key.open(0);
  const auto [s0, s1] = share(RingTensor({4}), tape);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(s1[i], Ring{0} - s0[i]);
}

TEST(BeaverMatmul, SmallProductAndTraffic) {
  std::mt19937_64 rng(1);
  const Shared x = testing::split(RingTensor({2, 2}, {1, 2, 3, 4}), rng);
  const Shared y = testing::split(RingTensor({2, 2}, {5, 6, 7, 8}), rng);
  Mesh mesh;
  const auto z = mesh.open([&](net::PartyContext& c) {
    return beaver_matmul(c, x.for_party(c.party()), y.for_party(c.party()));
  });
  EXPECT_EQ(z, RingTensor({2, 2}, {19, 22, 43, 50}));
  const auto r = mesh.reports();
  EXPECT_EQ(net::total_sent_elements(r, {Phase::BeaverE, Phase::BeaverF}), 16u);
  EXPECT_EQ(r[2].sent_elements([](const net::CommEntry& e) { return e.to == 0; }), 4u);
  EXPECT_EQ(r[2].sent_elements([](const net::CommEntry& e) { return e.to == 1; }), 0u);
  EXPECT_EQ(net::check_counter_symmetry(r), "");
}

TEST(BeaverMatmul, RandomMatricesMatchCleartext) {
  std::mt19937_64 rng(2);
  Mesh mesh;
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::random_ring({16, 16}, rng);
    const auto b = testing::random_ring({16, 16}, rng);
    const Shared x = testing::split(a, rng), y = testing::split(b, rng);
    const auto z = mesh.open([&](net::PartyContext& c) {
      return beaver_matmul(c, x.for_party(c.party()), y.for_party(c.party()));
    });
    ASSERT_EQ(z, kernels::reference::matmul(a, b));
  }
}

TEST(BeaverMatmul, RejectsMismatchedShapes) {
  Mesh mesh;
  EXPECT_THROW(beaver_matmul(mesh.ctxs[0], RingTensor({2, 3}), RingTensor({2, 3})), ShapeError);
}

TEST(BeaverMul, PairDeliverySendsBothShares) {
  std::mt19937_64 rng(3);
  const auto a = testing::random_ring({50}, rng), b = testing::random_ring({50}, rng);
  const Shared x = testing::split(a, rng), y = testing::split(b, rng);
  for (auto d : {Delivery::Single, Delivery::Pair}) {
    Mesh mesh;
    const auto z = mesh.open([&](net::PartyContext& c) {
      return beaver_mul(c, x.for_party(c.party()), y.for_party(c.party()), d);
    });
    EXPECT_EQ(z, broadcast_mul(a, b));
    EXPECT_EQ(net::egress_elements(mesh.reports(), 2), d == Delivery::Single ? 50u : 100u);
  }
}

struct ConvCase {
  std::int64_t m, f;
};

class ConvTraffic : public ::testing::TestWithParam<ConvCase> {};

TEST_P(ConvTraffic, MatchesFormulaInBothModes) {
  const auto [m, f] = GetParam();
  std::mt19937_64 rng(4);
  const auto img = testing::random_ring({1, m, m, 1}, rng);
  const auto flt = testing::random_ring({f, f, 1, 1}, rng);
  const Shared x = testing::split(img, rng), w = testing::split(flt, rng);
  const auto want = ir::conv2d_ref(img, flt, 1, kernels::Padding::Valid);
  for (auto mode : {ConvMode::Naive, ConvMode::Reshaped}) {
    Mesh mesh;
    const auto z = mesh.open([&](net::PartyContext& c) {
      return conv2d_protocol(c, x.for_party(c.party()), w.for_party(c.party()), 1,
                             kernels::Padding::Valid, mode);
    });
    EXPECT_EQ(z, want);
    const auto expected = mode == ConvMode::Naive
                              ? testing::conv_elements_naive(static_cast<std::uint64_t>(m),
                                                             static_cast<std::uint64_t>(f))
                              : testing::conv_elements_reshaped(static_cast<std::uint64_t>(m),
                                                                static_cast<std::uint64_t>(f));
    EXPECT_EQ(beaver_elements(mesh.reports()), expected);
    EXPECT_EQ(net::check_counter_symmetry(mesh.reports()), "");
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, ConvTraffic,
                         ::testing::Values(ConvCase{28, 5}, ConvCase{6, 6}, ConvCase{9, 2},
                                           ConvCase{3, 1}));

TEST(Conv, OnesImageOnesFilter) {
  std::mt19937_64 rng(5);
  const Shared x = testing::split(RingTensor({1, 3, 3, 1}, 1), rng);
  const Shared w = testing::split(RingTensor({2, 2, 1, 1}, 1), rng);
  Mesh mesh;
  const auto z = mesh.open([&](net::PartyContext& c) {
    return conv2d_protocol(c, x.for_party(c.party()), w.for_party(c.party()), 1,
                           kernels::Padding::Valid, ConvMode::Reshaped);
  });
  EXPECT_EQ(z, RingTensor({1, 2, 2, 1}, 4));
}

TEST(Conv, MultiChannelStrideAndPaddingMatchReference) {
  std::mt19937_64 rng(6);
  Mesh mesh;
  for (auto pad : {kernels::Padding::Valid, kernels::Padding::Same}) {
    for (std::int64_t stride : {1, 2}) {
      const auto img = testing::random_ring({2, 7, 6, 3}, rng);
      const auto flt = testing::random_ring({3, 2, 3, 4}, rng);
      const Shared x = testing::split(img, rng), w = testing::split(flt, rng);
      const auto want = ir::conv2d_ref(img, flt, stride, pad);
      for (auto mode : {ConvMode::Naive, ConvMode::Reshaped}) {
        const auto z = mesh.open([&](net::PartyContext& c) {
          return conv2d_protocol(c, x.for_party(c.party()), w.for_party(c.party()), stride, pad,
                                 mode);
        });
        EXPECT_EQ(z, want);
      }
    }
  }
}

TEST(Truncate, WithinOneOfFloorAcrossGuardBand) {
  std::mt19937_64 rng(7);
  const auto x = testing::random_bounded({10000}, std::int64_t{1} << 62, rng);
  const Shared s = testing::split(x, rng);
  for (int shift : {1, 13, 15, 40, 62}) {
    Mesh mesh;
    const auto z = mesh.open(
        [&](net::PartyContext& c) { return truncate(c, s.for_party(c.party()), shift); });
    for (std::int64_t i = 0; i < x.size(); ++i) {
      const auto t = to_signed(x[i]) >> shift;
      const auto got = to_signed(z[i]);
      ASSERT_TRUE(got == t || got == t + 1) << "x=" << to_signed(x[i]) << " s=" << shift;
    }
  }
}

TEST(Truncate, SpecimenValues) {
  std::mt19937_64 rng(8);
  const auto x = vec({7 * 32768 + 123, -(1 << 20)});
  Mesh mesh;
  for (int t = 0; t < 200; ++t) {
    const Shared s = testing::split(x, rng);
    const auto z = signed_of(mesh.open(
        [&](net::PartyContext& c) { return truncate(c, s.for_party(c.party()), 15); }));
    EXPECT_GE(z[0], 6);
    EXPECT_LE(z[0], 8);
    EXPECT_GE(z[1], -33);
    EXPECT_LE(z[1], -31);
  }
}

TEST(Truncate, ZeroShiftIsIdentityWithoutTraffic) {
  std::mt19937_64 rng(9);
  const auto x = testing::random_ring({20}, rng);
  const Shared s = testing::split(x, rng);
  Mesh mesh;
  EXPECT_EQ(mesh.open([&](net::PartyContext& c) { return truncate(c, s.for_party(c.party()), 0); }),
            x);
  EXPECT_EQ(net::total_sent_elements(mesh.reports()), 0u);
  EXPECT_EQ(truncate_local(0, s.s0, 0), s.s0);
}

TEST(TruncateLocal, SmallValuesWithinOne) {
  std::mt19937_64 rng(10);
  const auto x = testing::random_bounded({10000}, std::int64_t{1} << 30, rng);
  const Shared s = testing::split(x, rng);
  int misses = 0;
  for (std::int64_t i = 0; i < x.size(); ++i) {
    const auto got = to_signed(truncate_local(0, s.s0, 12)[i] + truncate_local(1, s.s1, 12)[i]);
    const auto t = to_signed(x[i]) >> 12;
    if (got < t - 1 || got > t + 1) ++misses;
    if (i > 200) break;
  }
  EXPECT_EQ(misses, 0);
}

TEST(PublicDiv, PowerOfTwoAndGeneralDivisors) {
  std::mt19937_64 rng(11);
  const auto x = testing::random_bounded({500}, std::int64_t{1} << 30, rng);
  const Shared s = testing::split(x, rng);
  for (std::int64_t d : {4, 9}) {
    Mesh mesh;
    const auto z =
        mesh.open([&](net::PartyContext& c) { return public_div(c, s.for_party(c.party()), d); });
    for (std::int64_t i = 0; i < x.size(); ++i) {
      const auto t = ir::floor_div(to_signed(x[i]), d);
      EXPECT_LE(std::abs(to_signed(z[i]) - t), 1);
    }
  }
}

std::vector<Ring> odd_open(const std::array<std::vector<Ring>, 3>& v) {
  std::vector<Ring> out(v[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod_add(v[0][i], v[1][i], kOddModulus);
  return out;
}

TEST(ShareConvert, ReconstructsOverOddRing) {
  std::mt19937_64 rng(12);
  std::vector<Ring> a = {5, Ring{1} << 63, 0, kOddModulus - 1};
  for (int i = 0; i < 10000; ++i) a.push_back(rng() >> 2);
  std::vector<Ring> s0(a.size()), s1(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    s0[i] = rng();
    s1[i] = a[i] - s0[i];
  }
  for (bool opt : {true, false}) {
    Mesh mesh({true, opt});
    const auto out = net::run_parties(mesh.ctxs, [&](net::PartyContext& c) {
      return share_convert(c, c.party() == 0 ? s0 : c.party() == 1 ? s1 : std::vector<Ring>(a.size()));
    });
    EXPECT_TRUE(out[2].empty());
    EXPECT_EQ(odd_open(out), a);
  }
}

std::pair<std::vector<Ring>, std::vector<Ring>> bit_shares(const std::vector<Ring>& x,
                                                           std::mt19937_64& rng) {
  std::vector<Ring> b0, b1;
  for (auto v : x) {
    for (int i = 0; i < kBits; ++i) {
      const Ring r = rng() % kPrime;
      b0.push_back(r);
      b1.push_back(mod_sub((v >> i) & 1, r, kPrime));
    }
  }
  return {b0, b1};
}

std::vector<Ring> compare_on_helper(const std::vector<Ring>& x, const std::vector<Ring>& r,
                                    const std::vector<Ring>& beta, std::mt19937_64& rng) {
  const auto [b0, b1] = bit_shares(x, rng);
  Mesh mesh;
  const auto out = net::run_parties(mesh.ctxs, [&](net::PartyContext& c) {
    if (c.party() == 2) return private_compare(c, {}, {}, {}, x.size());
    return private_compare(c, c.party() == 0 ? b0 : b1, r, beta, x.size());
  });
  EXPECT_TRUE(out[0].empty());
  return out[2];
}

TEST(PrivateCompare, Specimens) {
  std::mt19937_64 rng(13);
  EXPECT_EQ(compare_on_helper({5, 3, 7}, {3, 3, 2}, {0, 0, 1}, rng), (std::vector<Ring>{1, 0, 0}));
}

TEST(PrivateCompare, RandomAndEdgeValues) {
  std::mt19937_64 rng(14);
  std::vector<Ring> x, r, beta;
  const Ring big = ~Ring{0};
  for (auto [a, b] : std::vector<std::pair<Ring, Ring>>{{0, 0}, {big, big}, {big - 1, big},
                                                        {0, big}, {big, 0}, {1, 0}}) {
    for (Ring bt : {0, 1}) {
      x.push_back(a);
      r.push_back(b);
      beta.push_back(bt);
    }
  }
  for (int i = 0; i < 500; ++i) {
    x.push_back(rng() >> (rng() % 64));
    r.push_back(i % 5 == 0 ? x.back() : rng() >> (rng() % 64));
    beta.push_back(rng() & 1);
  }
  const auto got = compare_on_helper(x, r, beta, rng);
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_EQ(got[i], beta[i] ^ (x[i] > r[i] ? 1 : 0)) << "x=" << x[i] << " r=" << r[i];
  }
}

TEST(ComputeMsb, Specimens) {
  std::mt19937_64 rng(15);
  std::vector<Ring> a = {1, Ring{1} << 63, kOddModulus - 1, 0, (Ring{1} << 63) - 1};
  for (int i = 0; i < 2000; ++i) a.push_back(rng() % kOddModulus);
  std::vector<Ring> s0(a.size()), s1(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    s0[i] = rng() % kOddModulus;
    s1[i] = mod_sub(a[i], s0[i], kOddModulus);
  }
  Mesh mesh;
  const auto out = net::run_parties(mesh.ctxs, [&](net::PartyContext& c) {
    return compute_msb(c, c.party() == 0 ? s0 : c.party() == 1 ? s1 : std::vector<Ring>(a.size()));
  });
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(out[0][i] + out[1][i], a[i] >> 63) << i;
}

TEST(Drelu, SignConvention) {
  std::mt19937_64 rng(16);
  const Shared s = testing::split(vec({5, -3, 0, -1, (std::int64_t{1} << 62) - 1, -(std::int64_t{1} << 62) + 1}), rng);
  Mesh mesh;
  const auto z = mesh.open([&](net::PartyContext& c) { return drelu(c, s.for_party(c.party())); });
  EXPECT_EQ(signed_of(z), (std::vector<std::int64_t>{1, 0, 1, 0, 1, 0}));
}

TEST(SelectShare, MatchesCleartextMux) {
  std::mt19937_64 rng(17);
  RingTensor b({1000});
  for (auto& v : b.data()) v = rng() & 1;
  const auto x = testing::random_ring({1000}, rng), y = testing::random_ring({1000}, rng);
  const Shared sb = testing::split(b, rng), sx = testing::split(x, rng), sy = testing::split(y, rng);
  Mesh mesh;
  const auto z = mesh.open([&](net::PartyContext& c) {
    const int p = c.party();
    return select_share(c, sb.for_party(p), sx.for_party(p), sy.for_party(p));
  });
  for (std::int64_t i = 0; i < 1000; ++i) EXPECT_EQ(z[i], b[i] ? y[i] : x[i]);
}

TEST(Relu, MatchesCleartext) {
  std::mt19937_64 rng(18);
  const auto x = testing::random_bounded({32, 32}, std::int64_t{1} << 40, rng);
  const Shared s = testing::split(x, rng);
  Mesh mesh;
  const auto z = mesh.open([&](net::PartyContext& c) { return relu(c, s.for_party(c.party())); });
  for (std::int64_t i = 0; i < x.size(); ++i) EXPECT_EQ(to_signed(z[i]), std::max<std::int64_t>(to_signed(x[i]), 0));
  EXPECT_EQ(net::check_counter_symmetry(mesh.reports()), "");
  EXPECT_EQ(net::audit_helper_ingress(mesh.reports()[2]), "");
}

TEST(Relu, HelperTrafficHalvesWithTapeShares) {
  std::mt19937_64 rng(19);
  const auto x = testing::random_bounded({64, 64}, std::int64_t{1} << 40, rng);
  const Shared s = testing::split(x, rng);
  std::array<std::uint64_t, 2> helper{}, total{};
  for (bool opt : {true, false}) {
    Mesh mesh({true, opt}, 7);
    mesh.open([&](net::PartyContext& c) { return relu(c, s.for_party(c.party())); });
    helper[opt] = net::egress_elements(mesh.reports(), 2);
    total[opt] = net::total_sent_elements(mesh.reports());
  }
  EXPECT_EQ(2 * helper[1], helper[0]);
  const double reduction = 1.0 - static_cast<double>(total[1]) / static_cast<double>(total[0]);
  EXPECT_GT(reduction, 0.15);
  EXPECT_LT(reduction, 0.35);
}

TEST(Maxpool, Specimens) {
  std::mt19937_64 rng(20);
  const Shared s = testing::split(vec({1, -2, 3, 0}).reshaped({1, 2, 2, 1}), rng);
  Mesh mesh;
  EXPECT_EQ(signed_of(mesh.open(
                [&](net::PartyContext& c) { return maxpool(c, s.for_party(c.party()), 2, 2); })),
            std::vector<std::int64_t>{3});
  EXPECT_EQ(mesh.open([&](net::PartyContext& c) { return maxpool(c, s.for_party(c.party()), 1, 1); }),
            testing::open({s.s0, s.s1, s.s0}));
}

TEST(Maxpool, RandomWindowsMatchInterpreter) {
  std::mt19937_64 rng(21);
  Mesh mesh;
  for (int t = 0; t < 20; ++t) {
    const auto x = testing::random_bounded({1, 8, 8, 2}, std::int64_t{1} << 40, rng);
    const Shared s = testing::split(x, rng);
    const auto z =
        mesh.open([&](net::PartyContext& c) { return maxpool(c, s.for_party(c.party()), 2, 2); });
    ir::GraphBuilder<Ring> b;
    const int in = b.input({1, 8, 8, 2});
    ir::Attrs a;
    a.window = 2;
    a.stride = 2;
    b.op(ir::OpKind::MaxPool, {in}, a);
    auto p = ir::LlilProgram{b.build()};
    ASSERT_EQ(z, ir::eval_fixed(p, x));
  }
}

TEST(Argmax, TiesKeepFirstIndex) {
  std::mt19937_64 rng(22);
  const Shared s = testing::split(vec({2, 7, 7, 1}), rng);
  const Shared one = testing::split(vec({-9}), rng);
  Mesh mesh;
  EXPECT_EQ(mesh.open([&](net::PartyContext& c) { return argmax_protocol(c, s.for_party(c.party())); }),
            RingTensor({1}, {1}));
  EXPECT_EQ(mesh.open([&](net::PartyContext& c) { return argmax_protocol(c, one.for_party(c.party())); }),
            RingTensor({1}, {0}));
}

TEST(Argmax, RandomRowsMatchCleartext) {
  std::mt19937_64 rng(23);
  auto x = testing::random_bounded({1000, 6}, 8, rng);
  const Shared s = testing::split(x, rng);
  Mesh mesh;
  const auto z =
      mesh.open([&](net::PartyContext& c) { return argmax_protocol(c, s.for_party(c.party())); });
  EXPECT_EQ(z, ir::argmax_ring(x));
}

TEST(Reveal, OnlyRecipientsLearnTheValue) {
  std::mt19937_64 rng(24);
  const Shared s = testing::split(vec({11, 12}), rng);
  auto ctxs = net::memory_mesh({}, 1, {0});
  const auto out = net::run_parties(ctxs, [&](net::PartyContext& c) {
    return reveal(c, s.for_party(c.party()));
  });
  ASSERT_TRUE(out[0].has_value());
  EXPECT_EQ(*out[0], vec({11, 12}));
  EXPECT_FALSE(out[1].has_value());
  EXPECT_FALSE(out[2].has_value());
}

TEST(Executor, AddNeedsNoProtocolTraffic) {
  std::mt19937_64 rng(25);
  ir::GraphBuilder<Ring> b;
  const int in = b.input({1, 4});
  const int w = b.constant(vec({1, 2, 3, 4}).reshaped({1, 4}));
  b.op(ir::OpKind::Add, {in, w});
  ir::LlilProgram p{b.build()};
  const auto x = vec({10, 20, 30, 40}).reshaped({1, 4});
  const Shared sx = testing::split(x, rng);
  const Shared sw = testing::split(p.weights.at(w), rng);
  auto progs = std::array<ir::LlilProgram, 3>{p, p, p};
  progs[0].weights[w] = sw.s0;
  progs[1].weights[w] = sw.s1;
  progs[2].weights.clear();
  Mesh mesh;
  const auto out = net::run_parties(mesh.ctxs, [&](net::PartyContext& c) {
    const int q = c.party();
    return run_llil_mpc(c, progs[q], q == 2 ? std::nullopt : std::optional(sx.of(q)));
  });
  EXPECT_EQ(*out[0], ir::eval_fixed(p, x));
  const auto r = mesh.reports();
  EXPECT_EQ(net::total_sent_elements(r), net::total_sent_elements(r, {Phase::RevealOutput}));
}

}  // namespace
}  // namespace trio::mpc
