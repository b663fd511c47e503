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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "trio/ir/graph.hpp"
#include "trio/net/config.hpp"

namespace trio::net {

// Output of the test-mode dealer. Parties 0 and 1 receive additive shares of
// every weight and of the query; party 2 receives the program structure and
// its keys only.
struct DealtShares {
  std::array<ir::LlilProgram, 3> programs;
  std::array<std::optional<RingTensor>, 3> inputs;
  std::array<PartyConfig, 3> configs;
};

DealtShares deal_shares(const ir::LlilProgram& program, const RingTensor& input, std::uint64_t seed,
                        std::uint16_t base_port = 9700);

// Writes p{i}.tmpc, p{i}.json and, for parties 0 and 1, p{i}.input.tmpt.
void write_dealt(const DealtShares& dealt, const std::filesystem::path& dir);

}  // namespace trio::net
