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

#include <arpa/inet.h>
#include <gtest/gtest.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <filesystem>
#include <future>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "trio/compiler/lower.hpp"
#include "trio/compiler/models.hpp"
#include "trio/ir/container.hpp"
#include "trio/kernels/reference.hpp"
#include "trio/mpc/beaver.hpp"
#include "trio/net/dealer.hpp"
#include "trio/net/mesh.hpp"

namespace trio::net {
namespace {

using namespace std::chrono_literals;

std::uint16_t next_port() {
  static std::uint16_t port = static_cast<std::uint16_t>(24000 + (::getpid() % 200) * 40);
  port = static_cast<std::uint16_t>(port + 5);
  return port;
}

TEST(Frame, PhaseRegistry) {
  EXPECT_EQ(phase_name(Phase::BeaverE), "beaver-E");
  EXPECT_EQ(phase_from_tag(4), Phase::BeaverC);
  EXPECT_FALSE(phase_from_tag(0).has_value());
  EXPECT_FALSE(phase_from_tag(13).has_value());
  EXPECT_TRUE(allowed_into_helper(Phase::PcMsg));
  EXPECT_FALSE(allowed_into_helper(Phase::BeaverE));
}

TEST(Party, SendCountsElementsAndBytes) {
  auto ctxs = memory_mesh();
  std::vector<Ring> xs(100);
  std::iota(xs.begin(), xs.end(), Ring{1});
  ctxs[0].send(1, Phase::BeaverE, xs);
  EXPECT_EQ(ctxs[1].recv(0, Phase::BeaverE, 100), xs);
  for (int p : {0, 1}) {
    const auto r = ctxs[p].report();
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.entries[0].elements, 100u);
    EXPECT_EQ(r.entries[0].bytes, 806u);
    EXPECT_EQ(r.entries[0].frames, 1u);
  }
  EXPECT_EQ(ctxs[0].report().sent_elements(), 100u);
  EXPECT_EQ(ctxs[1].report().recv_elements(), 100u);
}

TEST(Party, ZeroLengthPayload) {
  auto ctxs = memory_mesh();
  ctxs[1].send(0, Phase::BeaverF, {});
  EXPECT_TRUE(ctxs[0].recv(1, Phase::BeaverF, 0).empty());
  EXPECT_EQ(ctxs[1].report().entries.at(0).bytes, 6u);
}

TEST(Party, TagMismatchIsDesync) {
  auto ctxs = memory_mesh();
  const std::vector<Ring> xs{1, 2, 3};
  ctxs[0].send(1, Phase::BeaverE, xs);
  EXPECT_THROW(ctxs[1].recv(0, Phase::BeaverF, 3), ProtocolError);
}

TEST(Party, LengthMismatchIsDesync) {
  auto ctxs = memory_mesh();
  const std::vector<Ring> xs{1, 2, 3};
  ctxs[0].send(1, Phase::BeaverE, xs);
  EXPECT_THROW(ctxs[1].recv(0, Phase::BeaverE, 4), ProtocolError);
}

TEST(Party, HelperIngressWhitelist) {
  auto ctxs = memory_mesh();
  const std::vector<Ring> xs{1};
  EXPECT_THROW(ctxs[0].send(2, Phase::BeaverE, xs), ProtocolError);
  EXPECT_NO_THROW(ctxs[0].send(2, Phase::PcMsg, xs));
  EXPECT_EQ(ctxs[2].recv(0, Phase::PcMsg, 1), xs);
  EXPECT_THROW(ctxs[2].recv(1, Phase::BeaverC, 1), ProtocolError);
}

TEST(Party, ExchangeIsSymmetric) {
  auto ctxs = memory_mesh();
  std::vector<Ring> a(50000, 7), b(50000, 9);
  auto fut = std::async(std::launch::async, [&] { return ctxs[1].exchange(0, Phase::TruncReveal, b); });
  EXPECT_EQ(ctxs[0].exchange(1, Phase::TruncReveal, a), b);
  EXPECT_EQ(fut.get(), a);
  EXPECT_EQ(check_counter_symmetry({ctxs[0].report(), ctxs[1].report(), ctxs[2].report()}), "");
}

TEST(Party, TapesAgreeAcrossKeyHolders) {
  auto ctxs = memory_mesh();
  auto t0 = ctxs[0].tape(KeyPair::P01, Phase::BeaverE);
  auto t1 = ctxs[1].tape(KeyPair::P01, Phase::BeaverE);
  EXPECT_EQ(t0.expand(16), t1.expand(16));
  EXPECT_EQ(t0.stream_id() >> 48, 2u);
  auto next = ctxs[0].tape(KeyPair::P01, Phase::BeaverE);
  EXPECT_NE(next.stream_id(), t0.stream_id());
  EXPECT_THROW(ctxs[2].tape(KeyPair::P01, Phase::BeaverE), ProtocolError);
}

TEST(Comm, ReportJsonRoundTrip) {
  CommReport r;
  r.party = 2;
  r.entries.push_back({2, 0, 4, 806, 100, 1});
  r.entries.push_back({0, 2, 5, 70, 8, 2});
  EXPECT_EQ(CommReport::from_json(r.to_json()), r);
  CommReport empty;
  EXPECT_EQ(empty.sent_elements(), 0u);
  EXPECT_EQ(empty.sent_bytes(), 0u);
  EXPECT_EQ(CommReport::from_json(empty.to_json()), empty);
}

TEST(Comm, SymmetryCheckFlagsMismatch) {
  CommReport a, b, c;
  a.party = 0;
  b.party = 1;
  c.party = 2;
  a.entries.push_back({0, 1, 2, 806, 100, 1});
  b.entries.push_back({0, 1, 2, 806, 99, 1});
  EXPECT_NE(check_counter_symmetry({a, b, c}), "");
  b.entries[0].elements = 100;
  EXPECT_EQ(check_counter_symmetry({a, b, c}), "");
}

TEST(Comm, HelperAuditFlagsForbiddenTag) {
  CommReport h;
  h.party = 2;
  h.entries.push_back({0, 2, 5, 14, 1, 1});
  EXPECT_EQ(audit_helper_ingress(h), "");
  h.entries.push_back({1, 2, 2, 14, 1, 1});
  EXPECT_NE(audit_helper_ingress(h), "");
}

TEST(Config, ValidateAndJsonRoundTrip) {
  const auto cfgs = local_configs(9100, 3);
  EXPECT_NO_THROW(validate_config_set(cfgs));
  for (const auto& c : cfgs) {
    c.validate();
    const auto back = PartyConfig::from_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
  }
  EXPECT_FALSE(cfgs[0].keys[static_cast<int>(KeyPair::P12)].has_value());
  EXPECT_EQ(cfgs[1].peers[0]->port, 9100);
}

TEST(Config, RejectsBadFields) {
  auto c = local_configs(9100, 3)[1];
  auto bad = c;
  bad.party = 3;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = c;
  bad.peers[0].reset();
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = c;
  bad.output_recipients = {0, 7};
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_THROW(Endpoint::parse("localhost"), ValidationError);
  EXPECT_THROW(Endpoint::parse("h:99999"), ValidationError);
  EXPECT_EQ(Endpoint::parse("10.0.0.1:80").str(), "10.0.0.1:80");
}

TEST(Config, SetRejectsKeyMismatch) {
  auto cfgs = local_configs(9100, 3);
  cfgs[1].keys[static_cast<int>(KeyPair::P01)] = crypto::derive_key(99, "k01");
  EXPECT_THROW(validate_config_set(cfgs), ValidationError);
  cfgs = local_configs(9100, 3);
  cfgs[2].flags.prf_opt = false;
  EXPECT_THROW(validate_config_set(cfgs), ValidationError);
}

TEST(Config, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / ("trio_cfg_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto c = local_configs(9300, 8)[2];
  c.save(dir / "p2.json");
  EXPECT_EQ(PartyConfig::load(dir / "p2.json").to_json(), c.to_json());
  EXPECT_THROW(PartyConfig::load(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Mesh, ConnectsOverLocalhost) {
  auto cfgs = local_configs(next_port(), 4);
  for (auto& c : cfgs) c.timeout = 5000ms;
  std::array<std::future<PartyContext>, 3> futs;
  for (int i = 2; i >= 0; --i) {
    futs[i] = std::async(std::launch::async, [&, i] { return connect_mesh(cfgs[i]); });
  }
  std::array<PartyContext, 3> ctxs{futs[0].get(), futs[1].get(), futs[2].get()};
  std::mt19937_64 rng(3);
  const auto x = testing::random_ring({4, 4}, rng);
  const auto y = testing::random_ring({4, 4}, rng);
  const auto xs = testing::split(x, rng), ys = testing::split(y, rng);
  const auto z = testing::open(run_parties(ctxs, [&](PartyContext& ctx) {
    return mpc::beaver_matmul(ctx, xs.for_party(ctx.party()), ys.for_party(ctx.party()));
  }));
  EXPECT_EQ(z, kernels::reference::matmul(x, y));
}

TEST(Mesh, RejectsWrongWireVersion) {
  auto cfgs = local_configs(next_port(), 4);
  cfgs[0].timeout = 3000ms;
  auto fut = std::async(std::launch::async, [&] { return connect_mesh(cfgs[0]); });
  std::this_thread::sleep_for(100ms);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(cfgs[0].listen.port);
  ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  for (int i = 0; i < 50 && ::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0; ++i) {
    std::this_thread::sleep_for(20ms);
  }
  const std::uint8_t hello[6] = {'T', 'M', 'P', 'W', 2, 1};
  ASSERT_EQ(::write(fd, hello, 6), 6);
  try {
    fut.get();
    FAIL() << "handshake accepted";
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  ::close(fd);
}

TEST(Mesh, AbsentPeerTimesOutNamingIt) {
  auto cfgs = local_configs(next_port(), 4);
  cfgs[1].timeout = 400ms;
  try {
    connect_mesh(cfgs[1]);
    FAIL() << "connected to nobody";
  } catch (const TimeoutError& e) {
    EXPECT_NE(std::string(e.what()).find("party 0"), std::string::npos) << e.what();
  }
}

TEST(Dealer, SharesReconstructAndHelperHoldsNothing) {
  const auto p = compiler::compile_to_llil(compiler::models::logistic_regression(2, 32, 4), 12);
  const RingTensor input({1, 32}, Ring{77});
  const auto d = deal_shares(p, input, 5);
  EXPECT_TRUE(d.programs[2].weights.empty());
  EXPECT_FALSE(d.inputs[2].has_value());
  EXPECT_EQ(mpc::reconstruct(*d.inputs[0], *d.inputs[1]), input);
  EXPECT_NE(*d.inputs[0], input);
  for (const auto& [id, w] : p.weights) {
    EXPECT_EQ(mpc::reconstruct(d.programs[0].weights.at(id), d.programs[1].weights.at(id)), w);
  }
  const auto again = deal_shares(p, input, 5);
  EXPECT_EQ(again.programs[0], d.programs[0]);
  EXPECT_EQ(again.inputs[1], d.inputs[1]);
  EXPECT_NE(deal_shares(p, input, 6).inputs[0], d.inputs[0]);
  EXPECT_NO_THROW(validate_config_set(d.configs));
}

TEST(Dealer, WritesPerPartyFiles) {
  const auto dir = std::filesystem::temp_directory_path() / ("trio_deal_" + std::to_string(::getpid()));
  const auto p = compiler::compile_to_llil(compiler::models::logistic_regression(2, 8, 3), 12);
  write_dealt(deal_shares(p, RingTensor({1, 8}, Ring{1}), 5), dir);
  for (const char* f : {"p0.tmpc", "p1.tmpc", "p2.tmpc", "p0.json", "p1.json", "p2.json",
                        "p0.input.tmpt", "p1.input.tmpt"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "p2.input.tmpt"));
  EXPECT_TRUE(ir::load_program(dir / "p2.tmpc", true).weights.empty());
  std::filesystem::remove_all(dir);
}

TEST(Transcript, DeterministicForFixedSeed) {
  std::mt19937_64 rng(1);
  const auto x = testing::split(testing::random_ring({8, 8}, rng), rng);
  auto run = [&](std::uint64_t seed) {
    auto ctxs = memory_mesh({}, seed);
    run_parties(ctxs, [&](PartyContext& ctx) {
      return mpc::beaver_matmul(ctx, x.for_party(ctx.party()), x.for_party(ctx.party()));
    });
    return std::array<std::string, 3>{ctxs[0].transcript_digest(), ctxs[1].transcript_digest(),
                                      ctxs[2].transcript_digest()};
  };
  EXPECT_EQ(run(3), run(3));
  EXPECT_NE(run(3), run(4));
}

}  // namespace
}  // namespace trio::net
