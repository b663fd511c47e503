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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trio/crypto/prf.hpp"

namespace trio::net {

enum class KeyPair { P01, P02, P12 };

std::string_view key_pair_name(KeyPair k);
bool holds_key(int party, KeyPair k);
KeyPair pair_of(int a, int b);

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  static Endpoint parse(const std::string& text);
  std::string str() const;
  bool operator==(const Endpoint&) const = default;
};

struct ProtocolFlags {
  bool reshaped_conv = true;
  bool prf_opt = true;
};

// Per-party deployment file. Each party holds exactly the two pairwise keys
// that include it.
struct PartyConfig {
  int party = 0;
  Endpoint listen;
  std::array<std::optional<Endpoint>, 3> peers;  // unset at own index
  std::array<std::optional<crypto::Key128>, 3> keys;  // indexed by KeyPair
  std::vector<int> output_recipients{0, 1};
  ProtocolFlags flags;
  std::chrono::milliseconds timeout{10000};
  std::uint64_t seed = 0;

  // Throws ValidationError on a malformed or inconsistent config.
  void validate() const;
  const crypto::Key128& key(KeyPair k) const;

  nlohmann::json to_json() const;
  static PartyConfig from_json(const nlohmann::json& j);
  static PartyConfig load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

// Cross-checks three configs: distinct ids, matching shared keys, identical
// recipient sets and flags.
void validate_config_set(const std::array<PartyConfig, 3>& cfgs);

// Three configs for localhost ports base..base+2 with keys derived from seed.
std::array<PartyConfig, 3> local_configs(std::uint16_t base_port, std::uint64_t seed);

}  // namespace trio::net
