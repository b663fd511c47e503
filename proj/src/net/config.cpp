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

#include "trio/net/config.hpp"

#include <algorithm>
#include <fstream>

#include "trio/errors.hpp"
#include "trio/tensor_io.hpp"

namespace trio::net {

using nlohmann::json;

std::string_view key_pair_name(KeyPair k) {
  switch (k) {
    case KeyPair::P01: return "k01";
    case KeyPair::P02: return "k02";
    case KeyPair::P12: return "k12";
  }
  return "?";
}

bool holds_key(int party, KeyPair k) {
  switch (k) {
    case KeyPair::P01: return party == 0 || party == 1;
    case KeyPair::P02: return party == 0 || party == 2;
    case KeyPair::P12: return party == 1 || party == 2;
  }
  return false;
}

KeyPair pair_of(int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  if (lo == 0 && hi == 1) return KeyPair::P01;
  if (lo == 0 && hi == 2) return KeyPair::P02;
  if (lo == 1 && hi == 2) return KeyPair::P12;
  throw ValidationError("no pairwise key for parties " + std::to_string(a) + "," + std::to_string(b));
}

Endpoint Endpoint::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw ValidationError("address '" + text + "' lacks a port");
  Endpoint e;
  e.host = text.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ValidationError("address '" + text + "' has a bad port");
  }
  if (port < 0 || port > 65535) throw ValidationError("address '" + text + "' has a bad port");
  e.port = static_cast<std::uint16_t>(port);
  return e;
}

std::string Endpoint::str() const { return host + ":" + std::to_string(port); }

void PartyConfig::validate() const {
  if (party < 0 || party > 2) throw ValidationError("config: party must be 0, 1 or 2");
  for (int j = 0; j < 3; ++j) {
    if (j == party && peers[j]) throw ValidationError("config: party lists itself as a peer");
    if (j != party && !peers[j]) {
      throw ValidationError("config: missing address of party " + std::to_string(j));
    }
  }
  for (auto k : {KeyPair::P01, KeyPair::P02, KeyPair::P12}) {
    const bool has = keys[static_cast<int>(k)].has_value();
    if (has != holds_key(party, k)) {
      throw ValidationError("config: party " + std::to_string(party) +
                            (has ? " must not hold " : " is missing ") + std::string(key_pair_name(k)));
    }
  }
  if (output_recipients.empty()) throw ValidationError("config: no output recipient");
  for (int r : output_recipients) {
    if (r != 0 && r != 1) throw ValidationError("config: output recipients must be party 0 or 1");
  }
  if (timeout.count() <= 0) throw ValidationError("config: timeout must be positive");
}

const crypto::Key128& PartyConfig::key(KeyPair k) const {
  const auto& slot = keys[static_cast<int>(k)];
  if (!slot) throw ValidationError("config: party does not hold " + std::string(key_pair_name(k)));
  return *slot;
}

json PartyConfig::to_json() const {
  json j;
  j["party"] = party;
  j["listen"] = listen.str();
  j["peers"] = json::object();
  for (int p = 0; p < 3; ++p) {
    if (peers[p]) j["peers"][std::to_string(p)] = peers[p]->str();
  }
  j["keys"] = json::object();
  for (auto k : {KeyPair::P01, KeyPair::P02, KeyPair::P12}) {
    if (const auto& key = keys[static_cast<int>(k)]) {
      j["keys"][std::string(key_pair_name(k))] = crypto::key_to_hex(*key);
    }
  }
  j["output_recipients"] = output_recipients;
  j["reshaped_conv"] = flags.reshaped_conv;
  j["prf_opt"] = flags.prf_opt;
  j["timeout_ms"] = timeout.count();
  j["seed"] = seed;
  return j;
}

PartyConfig PartyConfig::from_json(const json& j) {
  PartyConfig c;
  try {
    c.party = j.at("party").get<int>();
    c.listen = Endpoint::parse(j.at("listen").get<std::string>());
    for (const auto& [id, addr] : j.at("peers").items()) {
      const int p = std::stoi(id);
      if (p < 0 || p > 2) throw ValidationError("config: unknown peer id " + id);
      c.peers[p] = Endpoint::parse(addr.get<std::string>());
    }
    for (const auto& [name, hex] : j.at("keys").items()) {
      bool known = false;
      for (auto k : {KeyPair::P01, KeyPair::P02, KeyPair::P12}) {
        if (name == key_pair_name(k)) {
          c.keys[static_cast<int>(k)] = crypto::key_from_hex(hex.get<std::string>());
          known = true;
        }
      }
      if (!known) throw ValidationError("config: unknown key '" + name + "'");
    }
    c.output_recipients = j.value("output_recipients", std::vector<int>{0, 1});
    c.flags.reshaped_conv = j.value("reshaped_conv", true);
    c.flags.prf_opt = j.value("prf_opt", true);
    c.timeout = std::chrono::milliseconds(j.value("timeout_ms", 10000));
    c.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

PartyConfig PartyConfig::load(const std::filesystem::path& path) {
  try {
    return from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void PartyConfig::save(const std::filesystem::path& path) const {
  write_file(path, to_json().dump(2) + "\n");
}

void validate_config_set(const std::array<PartyConfig, 3>& cfgs) {
  for (int i = 0; i < 3; ++i) {
    cfgs[i].validate();
    if (cfgs[i].party != i) throw ValidationError("config set: duplicate or misplaced party ids");
  }
  for (auto k : {KeyPair::P01, KeyPair::P02, KeyPair::P12}) {
    std::vector<crypto::Key128> held;
    for (const auto& c : cfgs) {
      if (const auto& key = c.keys[static_cast<int>(k)]) held.push_back(*key);
    }
    if (held.size() != 2 || held[0] != held[1]) {
      throw ValidationError("config set: " + std::string(key_pair_name(k)) +
                            " does not match between its two holders");
    }
  }
  for (const auto& c : cfgs) {
    if (c.output_recipients != cfgs[0].output_recipients ||
        c.flags.prf_opt != cfgs[0].flags.prf_opt ||
        c.flags.reshaped_conv != cfgs[0].flags.reshaped_conv) {
      throw ValidationError("config set: parties disagree on recipients or protocol flags");
    }
  }
}

std::array<PartyConfig, 3> local_configs(std::uint16_t base_port, std::uint64_t seed) {
  std::array<PartyConfig, 3> cfgs;
  const std::array<crypto::Key128, 3> keys = {crypto::derive_key(seed, "k01"),
                                              crypto::derive_key(seed, "k02"),
                                              crypto::derive_key(seed, "k12")};
  for (int p = 0; p < 3; ++p) {
    auto& c = cfgs[p];
    c.party = p;
    c.listen = {"127.0.0.1", static_cast<std::uint16_t>(base_port + p)};
    for (int q = 0; q < 3; ++q) {
      if (q != p) c.peers[q] = Endpoint{"127.0.0.1", static_cast<std::uint16_t>(base_port + q)};
    }
    for (auto k : {KeyPair::P01, KeyPair::P02, KeyPair::P12}) {
      if (holds_key(p, k)) c.keys[static_cast<int>(k)] = keys[static_cast<int>(k)];
    }
    c.seed = seed;
  }
  return cfgs;
}

}  // namespace trio::net
