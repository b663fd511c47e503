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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "trio/crypto/prf.hpp"
#include "trio/net/channel.hpp"
#include "trio/net/comm.hpp"
#include "trio/net/config.hpp"
#include "trio/net/frame.hpp"

namespace trio::net {

// Everything one party needs to run the protocols: identity, channels to the
// other two parties, pairwise PRF keys, private randomness and counters.
// Confined to the party's protocol thread.
class PartyContext {
 public:
  PartyContext(int party, std::array<std::unique_ptr<Channel>, 3> channels,
               const std::array<std::optional<crypto::Key128>, 3>& keys, ProtocolFlags flags,
               std::uint64_t seed, std::vector<int> output_recipients = {0, 1});

  PartyContext(PartyContext&&) noexcept;
  PartyContext& operator=(PartyContext&&) noexcept;
  ~PartyContext();

  int party() const { return party_; }
  bool is_helper() const { return party_ == 2; }
  int peer() const { return 1 - party_; }  // the other data party, for P0/P1
  const ProtocolFlags& flags() const { return flags_; }
  ProtocolFlags& flags() { return flags_; }
  const std::vector<int>& output_recipients() const { return output_recipients_; }

  void send(int to, Phase phase, std::span<const Ring> elements);
  std::vector<Ring> recv(int from, Phase phase, std::size_t expected);
  // Sends to and receives from `peer` concurrently; same length both ways.
  std::vector<Ring> exchange(int peer, Phase phase, std::span<const Ring> elements);

  void send_control(int to, std::span<const std::uint8_t> bytes);
  std::vector<std::uint8_t> recv_control(int from);

  // Opens the next stream of the pairwise key for `phase`. Stream ids are
  // (phase << 48) | per-(pair, phase) counter, so the two key holders agree
  // as long as they open streams in the same protocol order.
  crypto::PrfTape tape(KeyPair pair, Phase phase);
  // Randomness known only to this party.
  crypto::PrfTape& private_tape() { return private_tape_; }

  CommReport report() const { return counter_.snapshot(); }
  void reset_counters() { counter_.reset(); }
  // SHA-256 over every frame this party has sent, per peer, concatenated.
  std::string transcript_digest() const;

 private:
  void write_frame(int to, Phase phase, const std::vector<std::uint8_t>& payload,
                   std::uint64_t elements);
  std::vector<std::uint8_t> read_frame(int from, Phase phase);
  Channel& channel(int peer);

  int party_;
  std::array<std::unique_ptr<Channel>, 3> channels_;
  std::array<std::unique_ptr<crypto::PrfKey>, 3> keys_;
  std::map<std::pair<int, std::uint16_t>, std::uint64_t> stream_counters_;
  crypto::PrfTape private_tape_;
  ProtocolFlags flags_;
  std::vector<int> output_recipients_;
  CommCounter counter_;
  std::array<std::unique_ptr<crypto::Sha256>, 3> sent_hash_;
};

}  // namespace trio::net
