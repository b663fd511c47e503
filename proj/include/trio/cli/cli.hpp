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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trio/errors.hpp"

namespace trio::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitProtocol = 4,
  kExitOverflow = 5,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Backend { Float, Fixed, Mpc };

// Everything `trio run` needs, gathered from the command line.
struct RunManifest {
  std::filesystem::path model;
  std::optional<std::filesystem::path> input;
  std::optional<int> scale;
  std::optional<std::filesystem::path> sweep_dir;
  Backend backend = Backend::Fixed;
  std::optional<std::filesystem::path> config;
  std::optional<int> party;
  bool naive_conv = false;
  bool no_prf_opt = false;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> out;
  bool verbose = false;

  // Throws UsageError for combinations that cannot work.
  void validate() const;
};

// Maps the library's exception hierarchy onto exit codes.
int exit_code_for(const std::exception& e);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trio::cli
