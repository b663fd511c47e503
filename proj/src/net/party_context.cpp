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

#include "trio/net/party_context.hpp"

#include <cstring>
#include <limits>
#include <thread>

#include "trio/errors.hpp"
#include "trio/tensor_io.hpp"

namespace trio::net {

namespace {

constexpr std::uint64_t kMaxFramePayload = std::numeric_limits<std::uint32_t>::max();

crypto::PrfTape make_private_tape(int party, std::uint64_t seed) {
  crypto::PrfKey key(crypto::derive_key(seed, "private-" + std::to_string(party)));
  return key.open(0);
}

std::vector<std::uint8_t> encode_elements(std::span<const Ring> elements) {
  std::vector<std::uint8_t> out(elements.size() * 8);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Ring v = elements[i];
    for (int b = 0; b < 8; ++b) out[i * 8 + b] = static_cast<std::uint8_t>(v >> (8 * b));
  }
  return out;
}

std::vector<Ring> decode_elements(const std::vector<std::uint8_t>& bytes) {
  std::vector<Ring> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = le::get_u64(bytes.data() + i * 8);
  return out;
}

}  // namespace

PartyContext::PartyContext(int party, std::array<std::unique_ptr<Channel>, 3> channels,
                           const std::array<std::optional<crypto::Key128>, 3>& keys,
                           ProtocolFlags flags, std::uint64_t seed,
                           std::vector<int> output_recipients)
    : party_(party),
      channels_(std::move(channels)),
      private_tape_(make_private_tape(party, seed)),
      flags_(flags),
      output_recipients_(std::move(output_recipients)),
      counter_(party) {
  if (party < 0 || party > 2) throw ValidationError("party id must be 0, 1 or 2");
  for (int k = 0; k < 3; ++k) {
    if (holds_key(party, static_cast<KeyPair>(k))) {
      if (!keys[k]) {
        throw ValidationError("party " + std::to_string(party) + " is missing " +
                              std::string(key_pair_name(static_cast<KeyPair>(k))));
      }
      keys_[k] = std::make_unique<crypto::PrfKey>(*keys[k]);
    }
  }
  for (int p = 0; p < 3; ++p) {
    if (p != party && !channels_[p]) {
      throw ValidationError("no channel to party " + std::to_string(p));
    }
    sent_hash_[p] = std::make_unique<crypto::Sha256>();
  }
}

PartyContext::PartyContext(PartyContext&&) noexcept = default;
PartyContext& PartyContext::operator=(PartyContext&&) noexcept = default;
PartyContext::~PartyContext() = default;

Channel& PartyContext::channel(int peer) {
  if (peer < 0 || peer > 2 || peer == party_ || !channels_[peer]) {
    throw ProtocolError("party " + std::to_string(party_) + " has no channel to " +
                        std::to_string(peer));
  }
  return *channels_[peer];
}

void PartyContext::write_frame(int to, Phase phase, const std::vector<std::uint8_t>& payload,
                               std::uint64_t elements) {
  if (to == 2 && !allowed_into_helper(phase)) {
    throw ProtocolError("refusing to send " + std::string(phase_name(phase)) +
                        " data to the helper");
  }
  if (payload.size() > kMaxFramePayload) throw ProtocolError("frame payload too large");
  std::string header;
  le::put_u16(header, static_cast<std::uint16_t>(phase));
  le::put_u32(header, static_cast<std::uint32_t>(payload.size()));
  Channel& ch = channel(to);
  std::vector<std::uint8_t> frame(header.begin(), header.end());
  frame.insert(frame.end(), payload.begin(), payload.end());
  ch.write(frame);
  sent_hash_[to]->update(frame);
  counter_.record(party_, to, phase, frame.size(), elements);
}

std::vector<std::uint8_t> PartyContext::read_frame(int from, Phase phase) {
  if (party_ == 2 && !allowed_into_helper(phase)) {
    throw ProtocolError("helper may not receive " + std::string(phase_name(phase)) + " frames");
  }
  Channel& ch = channel(from);
  std::array<std::uint8_t, kFrameHeaderBytes> header{};
  ch.read(header);
  const std::uint16_t tag = le::get_u16(header.data());
  const std::uint32_t length = le::get_u32(header.data() + 2);
  const auto got = phase_from_tag(tag);
  if (!got) throw ProtocolError("unknown phase tag " + std::to_string(tag));
  if (*got != phase) {
    throw ProtocolError("expected " + std::string(phase_name(phase)) + " frame from party " +
                        std::to_string(from) + ", got " + std::string(phase_name(*got)));
  }
  if (party_ == 2 && !allowed_into_helper(*got)) {
    throw ProtocolError("helper received forbidden " + std::string(phase_name(*got)) + " frame");
  }
  std::vector<std::uint8_t> payload(length);
  if (length > 0) ch.read(payload);
  const std::uint64_t elements = is_element_phase(phase) ? length / 8 : 0;
  counter_.record(from, party_, phase, kFrameHeaderBytes + length, elements);
  return payload;
}

void PartyContext::send(int to, Phase phase, std::span<const Ring> elements) {
  if (!is_element_phase(phase)) throw ProtocolError("phase carries no ring elements");
  write_frame(to, phase, encode_elements(elements), elements.size());
}

std::vector<Ring> PartyContext::recv(int from, Phase phase, std::size_t expected) {
  auto payload = read_frame(from, phase);
  if (payload.size() != expected * 8) {
    throw ProtocolError("party " + std::to_string(from) + " sent " +
                        std::to_string(payload.size() / 8) + " " + std::string(phase_name(phase)) +
                        " elements, expected " + std::to_string(expected));
  }
  return decode_elements(payload);
}

std::vector<Ring> PartyContext::exchange(int peer, Phase phase, std::span<const Ring> elements) {
  if (!is_element_phase(phase)) throw ProtocolError("phase carries no ring elements");
  auto payload = encode_elements(elements);
  if (channel(peer).write_never_blocks(payload.size() + kFrameHeaderBytes)) {
    write_frame(peer, phase, payload, elements.size());
    return recv(peer, phase, elements.size());
  }
  std::exception_ptr send_error;
  std::thread sender([&] {
    try {
      write_frame(peer, phase, payload, elements.size());
    } catch (...) {
      send_error = std::current_exception();
    }
  });
  std::vector<Ring> got;
  std::exception_ptr recv_error;
  try {
    got = recv(peer, phase, elements.size());
  } catch (...) {
    recv_error = std::current_exception();
  }
  sender.join();
  if (send_error) std::rethrow_exception(send_error);
  if (recv_error) std::rethrow_exception(recv_error);
  return got;
}

void PartyContext::send_control(int to, std::span<const std::uint8_t> bytes) {
  write_frame(to, Phase::Control, std::vector<std::uint8_t>(bytes.begin(), bytes.end()), 0);
}

std::vector<std::uint8_t> PartyContext::recv_control(int from) {
  return read_frame(from, Phase::Control);
}

crypto::PrfTape PartyContext::tape(KeyPair pair, Phase phase) {
  const int k = static_cast<int>(pair);
  if (!keys_[k]) {
    throw ProtocolError("party " + std::to_string(party_) + " does not hold " +
                        std::string(key_pair_name(pair)));
  }
  auto& counter = stream_counters_[{k, static_cast<std::uint16_t>(phase)}];
  const std::uint64_t id = (static_cast<std::uint64_t>(phase) << 48) | counter++;
  return keys_[k]->open(id);
}

std::string PartyContext::transcript_digest() const {
  std::string out;
  for (int p = 0; p < 3; ++p) {
    if (p != party_) out += sent_hash_[p]->hex_digest();
  }
  return out;
}

}  // namespace trio::net
