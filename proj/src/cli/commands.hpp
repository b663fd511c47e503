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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trio/cli/cli.hpp"

namespace trio::cli {

struct CompileOptions {
  std::filesystem::path model;
  std::optional<int> scale;
  std::optional<std::filesystem::path> sweep_dir;
  std::optional<std::filesystem::path> out;
};

struct DealOptions {
  std::filesystem::path program;
  std::filesystem::path input;
  std::optional<int> scale;
  std::filesystem::path out;
  std::uint64_t seed = 1;
  int base_port = 9700;
  std::vector<int> recipients{0, 1};
  bool naive_conv = false;
  bool no_prf_opt = false;
};

struct BenchConvOptions {
  std::int64_t m = 28;
  std::int64_t f = 5;
  std::int64_t channels = 1;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> out;
};

struct ReportOptions {
  std::vector<std::filesystem::path> reports;
  std::optional<std::filesystem::path> out;
};

int cmd_compile(const CompileOptions& o, std::ostream& out);
int cmd_run(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_deal(const DealOptions& o, std::ostream& out);
int cmd_bench_conv(const BenchConvOptions& o, std::ostream& out);
int cmd_report(const ReportOptions& o, std::ostream& out);

}  // namespace trio::cli
