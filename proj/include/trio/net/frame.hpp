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
#include <optional>
#include <string_view>

namespace trio::net {

inline constexpr std::string_view kWireMagic = "TMPW";
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kHandshakeBytes = 6;  // magic, version, party id

// u16 phase tag + u32 payload length.
inline constexpr std::size_t kFrameHeaderBytes = 6;

// Fixed registry of frame tags. Counters, the P2 ingress audit and the
// communication formulas are all keyed on these values.
enum class Phase : std::uint16_t {
  Handshake = 1,
  BeaverE = 2,
  BeaverF = 3,
  BeaverC = 4,
  PcMsg = 5,
  MsbDeal = 6,
  RevealOutput = 7,
  Control = 8,
  TruncDeal = 9,
  TruncReveal = 10,
  ScReveal = 11,
  MsbReveal = 12,
};

std::string_view phase_name(Phase p);
std::optional<Phase> phase_from_tag(std::uint16_t tag);

// Element frames carry u64 ring elements; control frames carry raw bytes and
// count zero elements.
inline constexpr bool is_element_phase(Phase p) {
  return p != Phase::Handshake && p != Phase::Control;
}

// Tags that may carry data into the helper: masked values for the share
// conversion and the blinded comparison messages.
inline constexpr bool allowed_into_helper(Phase p) {
  return p == Phase::ScReveal || p == Phase::PcMsg || p == Phase::Control;
}

}  // namespace trio::net
