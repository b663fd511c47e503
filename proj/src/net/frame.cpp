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

#include "trio/net/frame.hpp"

namespace trio::net {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Handshake: return "handshake";
    case Phase::BeaverE: return "beaver-E";
    case Phase::BeaverF: return "beaver-F";
    case Phase::BeaverC: return "beaver-C";
    case Phase::PcMsg: return "pc-msg";
    case Phase::MsbDeal: return "msb-deal";
    case Phase::RevealOutput: return "reveal-output";
    case Phase::Control: return "control";
    case Phase::TruncDeal: return "trunc-deal";
    case Phase::TruncReveal: return "trunc-reveal";
    case Phase::ScReveal: return "sc-reveal";
    case Phase::MsbReveal: return "msb-reveal";
  }
  return "unknown";
}

std::optional<Phase> phase_from_tag(std::uint16_t tag) {
  if (tag < 1 || tag > 12) return std::nullopt;
  return static_cast<Phase>(tag);
}

}  // namespace trio::net
