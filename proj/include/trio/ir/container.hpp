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
#include <string>
#include <string_view>

#include "trio/ir/graph.hpp"

namespace trio::ir {

// Container layout: 8-byte magic "TMPC0001", u32 little-endian JSON length,
// JSON header, then the weight blob (f32 for graphs, u64 for programs).
// Const nodes carry "shape" and "offset" (byte offset into the blob).
inline constexpr std::string_view kModelMagic = "TMPC0001";

// "hlil" or "llil", read from the container header without loading weights.
std::string container_format(std::string_view bytes);

HlilGraph parse_model(std::string_view bytes);
std::string serialize_model(const HlilGraph& g);

// Programs additionally carry "scale". A helper-party program is written
// with `include_weights = false`: shapes survive, payloads do not.
LlilProgram parse_program(std::string_view bytes, bool allow_missing_weights = false);
std::string serialize_program(const LlilProgram& p, bool include_weights = true);

HlilGraph load_model(const std::filesystem::path& path);
LlilProgram load_program(const std::filesystem::path& path, bool allow_missing_weights = false);

}  // namespace trio::ir
