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
#include <unistd.h>

#include <filesystem>
#include <future>
#include <sstream>

#include "json.hpp"
#include "trio/cli/cli.hpp"
#include "trio/compiler/models.hpp"
#include "trio/ir/container.hpp"
#include "trio/tensor_io.hpp"

namespace trio::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("trio_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_ / "calib");
    model_ = (dir_ / "logistic.tmpc").string();
    write_file(model_, ir::serialize_model(compiler::models::logistic_regression(3, 64, 10)));
    input_ = (dir_ / "x.tmpt").string();
    write_tensor(input_, compiler::models::random_input({1, 64}, 8));
    for (int i = 0; i < 8; ++i) {
      write_tensor(dir_ / "calib" / ("c" + std::to_string(i) + ".tmpt"),
                   compiler::models::random_input({1, 64}, 100 + i));
    }
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string model_, input_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"compile", model_}).code, kExitUsage);  // neither --scale nor --sweep
  EXPECT_EQ(cli({"compile", model_, "--scale", "12", "--sweep", path("calib")}).code, kExitUsage);
  EXPECT_EQ(cli({"compile", model_, "--sweep", path("nowhere")}).code, kExitUsage);
  EXPECT_EQ(cli({"run", model_, input_, "--backend", "quantum", "--scale", "12"}).code, kExitUsage);
  EXPECT_EQ(cli({"run", model_, input_, "--backend", "mpc", "--party", "0"}).code, kExitUsage);
  EXPECT_EQ(cli({"compile", model_, "--scale", "twelve"}).code, kExitUsage);
}

TEST_F(CliTest, CompileWritesProgramAndPrintsIt) {
  const auto r = cli({"compile", model_, "--scale", "15", "--out", path("p.tmpc")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("ScaleDown(xW, 15);"), std::string::npos) << r.out;
  EXPECT_EQ(ir::load_program(path("p.tmpc")).scale, 15);
}

TEST_F(CliTest, CompileSweepRecordsChoice) {
  const auto r = cli({"compile", model_, "--sweep", path("calib"), "--out", path("p.tmpc")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto report = nlohmann::json::parse(read_file(path("p.tmpc.sweep.json")));
  EXPECT_EQ(report["entries"].size(), 17u);
  EXPECT_EQ(ir::load_program(path("p.tmpc")).scale, report["chosen_scale"].get<int>());
}

TEST_F(CliTest, FloatAndFixedAgree) {
  const auto f = cli({"run", model_, input_, "--backend", "float"});
  const auto q = cli({"run", model_, input_, "--backend", "fixed", "--scale", "15"});
  ASSERT_EQ(f.code, kExitOk) << f.err;
  ASSERT_EQ(q.code, kExitOk) << q.err;
  EXPECT_EQ(nlohmann::json::parse(f.out)["class"], nlohmann::json::parse(q.out)["class"]);
}

TEST_F(CliTest, ValidationFailuresExitThree) {
  write_file(path("bad.tmpc"), "TMPC0001garbage");
  EXPECT_EQ(cli({"run", path("bad.tmpc"), input_, "--backend", "float"}).code, kExitValidation);
  EXPECT_EQ(cli({"run", path("missing.tmpc"), input_, "--backend", "float"}).code, kExitValidation);
  write_tensor(path("wrong.tmpt"), FloatTensor({1, 63}, 0.0f));
  EXPECT_EQ(cli({"run", model_, path("wrong.tmpt"), "--backend", "float"}).code, kExitValidation);
}

TEST_F(CliTest, OverflowExitsFive) {
  write_tensor(path("huge.tmpt"), FloatTensor({1, 64}, 1e15f));
  const auto r = cli({"run", model_, path("huge.tmpt"), "--backend", "fixed", "--scale", "20"});
  EXPECT_EQ(r.code, kExitOverflow) << r.err;
}

TEST_F(CliTest, BenchConvReportsBothModes) {
  const auto r = cli({"bench-conv", "28", "5", "--out", path("bench.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("29426"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2194"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("order of magnitude"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(read_file(path("bench.json")));
  EXPECT_TRUE(j.dump().find("29426") != std::string::npos);
  EXPECT_EQ(cli({"bench-conv", "3", "5"}).code, kExitUsage);
}

TEST_F(CliTest, DealRunReportOverLocalhost) {
  const int base = 25000 + (::getpid() % 400) * 10;
  ASSERT_EQ(cli({"deal", model_, input_, "--scale", "15", "--out", path("shares"), "--base-port",
                 std::to_string(base)})
                .code,
            kExitOk);
  std::array<std::future<Result>, 3> futs;
  for (int p = 0; p < 3; ++p) {
    const auto share = p == 2 ? std::vector<std::string>{} :
                                std::vector<std::string>{path("shares/p" + std::to_string(p) + ".input.tmpt")};
    std::vector<std::string> args{"run", path("shares/p" + std::to_string(p) + ".tmpc")};
    args.insert(args.end(), share.begin(), share.end());
    for (const auto& a : {std::string("--backend"), std::string("mpc"), std::string("--party"),
                          std::to_string(p), std::string("--config"),
                          path("shares/p" + std::to_string(p) + ".json")}) {
      args.push_back(a);
    }
    futs[p] = std::async(std::launch::async, [args] { return cli(args); });
  }
  std::array<Result, 3> res{futs[0].get(), futs[1].get(), futs[2].get()};
  for (const auto& r : res) ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto fixed = cli({"run", model_, input_, "--backend", "fixed", "--scale", "15"});
  EXPECT_EQ(nlohmann::json::parse(res[0].out)["class"], nlohmann::json::parse(fixed.out)["class"]);
  EXPECT_EQ(nlohmann::json::parse(res[1].out)["class"], nlohmann::json::parse(fixed.out)["class"]);

  const auto rep = cli({"report", path("shares/p0.comm.json"), path("shares/p1.comm.json"),
                        path("shares/p2.comm.json")});
  EXPECT_EQ(rep.code, kExitOk) << rep.out << rep.err;
}

TEST_F(CliTest, ReportRejectsForgedHelperIngress) {
  nlohmann::json h{{"party", 2},
                   {"entries", {{{"from", 0}, {"to", 2}, {"tag", 2}, {"bytes", 14}, {"elements", 1}, {"frames", 1}}}}};
  write_file(path("h.json"), h.dump());
  EXPECT_EQ(cli({"report", path("h.json")}).code, kExitProtocol);
}

}  // namespace
}  // namespace trio::cli
