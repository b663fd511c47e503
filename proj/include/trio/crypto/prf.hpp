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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "trio/tensor.hpp"

namespace trio::crypto {

using Key128 = std::array<std::uint8_t, 16>;

Key128 key_from_hex(std::string_view hex);
std::string key_to_hex(const Key128& key);

// Deterministic key derivation: first 16 bytes of SHA-256(label || seed).
Key128 derive_key(std::uint64_t seed, std::string_view label);

class AesEcb;

// Counter-mode stream under one key: element i of stream `id` is the low
// little-endian u64 of AES-128_key(id || i), both halves little-endian.
class PrfTape {
 public:
  PrfTape(std::shared_ptr<AesEcb> cipher, std::uint64_t stream_id, std::uint64_t start = 0);

  void expand_into(std::span<Ring> out);
  std::vector<Ring> expand(std::size_t n);
  RingTensor tensor(const Shape& shape);
  Ring next();

  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::shared_ptr<AesEcb> cipher_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
};

// A pairwise key plus the registry of stream ids already opened under it.
// Opening the same stream twice is a protocol bug and throws ProtocolError.
class PrfKey {
 public:
  explicit PrfKey(const Key128& key);

  PrfTape open(std::uint64_t stream_id);
  bool issued(std::uint64_t stream_id) const { return issued_.count(stream_id) != 0; }
  const Key128& key() const { return key_; }

 private:
  Key128 key_;
  std::shared_ptr<AesEcb> cipher_;
  std::unordered_set<std::uint64_t> issued_;
};

// Single element without any registry; used by tests to cross-check tapes.
Ring prf_element(const Key128& key, std::uint64_t stream_id, std::uint64_t index);

// Incremental SHA-256.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  void update(std::span<const std::uint8_t> bytes);
  // Digest of everything absorbed so far; the state keeps absorbing.
  std::string hex_digest() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace trio::crypto
