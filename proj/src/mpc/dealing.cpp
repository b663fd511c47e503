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

#include "trio/mpc/dealing.hpp"

#include "trio/errors.hpp"
#include "trio/mpc/modring.hpp"

namespace trio::mpc {

namespace {

std::vector<Ring> draw(crypto::PrfTape& tape, std::size_t n, Ring modulus) {
  auto v = tape.expand(n);
  for (auto& x : v) x = reduce(x, modulus);
  return v;
}

}  // namespace

std::vector<Ring> deal(net::PartyContext& ctx, net::Phase phase, std::span<const Ring> values,
                       std::size_t n, Ring modulus, Delivery delivery) {
  const bool single = delivery == Delivery::Single;
  switch (ctx.party()) {
    case 2: {
      if (values.size() != n) throw ProtocolError("deal: helper value count mismatch");
      std::vector<Ring> s1;
      if (single) {
        auto tape = ctx.tape(net::KeyPair::P12, phase);
        s1 = draw(tape, n, modulus);
      } else {
        s1 = draw(ctx.private_tape(), n, modulus);
        ctx.send(1, phase, s1);
      }
      std::vector<Ring> s0(n);
      for (std::size_t i = 0; i < n; ++i) s0[i] = mod_sub(values[i], s1[i], modulus);
      ctx.send(0, phase, s0);
      return {};
    }
    case 1:
      if (single) {
        auto tape = ctx.tape(net::KeyPair::P12, phase);
        return draw(tape, n, modulus);
      }
      return ctx.recv(2, phase, n);
    default:
      return ctx.recv(2, phase, n);
  }
}

}  // namespace trio::mpc
