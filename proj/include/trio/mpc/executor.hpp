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

#include <optional>

#include "trio/ir/graph.hpp"
#include "trio/net/party_context.hpp"
#include "trio/tensor.hpp"

namespace trio::mpc {

// Opens shares to the context's output recipients. Returns the value on a
// recipient and nullopt elsewhere.
std::optional<RingTensor> reveal(net::PartyContext& ctx, const RingTensor& x);

// Runs a fixed-point program on shares. P0/P1 pass their share programs and
// input shares; P2 passes the program structure and no input.
std::optional<RingTensor> run_llil_mpc(net::PartyContext& ctx, const ir::LlilProgram& program,
                                       const std::optional<RingTensor>& input_share);

}  // namespace trio::mpc
