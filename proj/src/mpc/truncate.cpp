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

#include "trio/mpc/truncate.hpp"

#include <bit>

#include "trio/errors.hpp"
#include "trio/ir/interpreter.hpp"
#include "trio/mpc/dealing.hpp"

namespace trio::mpc {

namespace {

using net::KeyPair;
using net::Phase;

constexpr Ring kOffset = Ring{1} << 62;

void check_shift(int shift) {
  if (shift < 0 || shift > 62) {
    throw ValidationError("truncation shift " + std::to_string(shift) + " outside [0, 62]");
  }
}

}  // namespace

RingTensor truncate(net::PartyContext& ctx, const RingTensor& x, int shift) {
  check_shift(shift);
  if (shift == 0) return x;
  const auto n = static_cast<std::size_t>(x.size());

  if (ctx.is_helper()) {
    auto r = ctx.tape(KeyPair::P02, Phase::TruncDeal).expand(n);
    const auto r1 = ctx.tape(KeyPair::P12, Phase::TruncDeal).expand(n);
    std::vector<Ring> dealt(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] += r1[i];
      dealt[i] = r[i] >> shift;
      dealt[n + i] = r[i] >> 63;
    }
    deal(ctx, Phase::TruncDeal, dealt, 2 * n, 0, Delivery::Single);
    return RingTensor(x.shape());
  }

  const int me = ctx.party();
  const auto r = ctx.tape(me == 0 ? KeyPair::P02 : KeyPair::P12, Phase::TruncDeal).expand(n);
  const auto dealt = deal(ctx, Phase::TruncDeal, {}, 2 * n, 0, Delivery::Single);

  std::vector<Ring> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = x[static_cast<std::int64_t>(i)] + r[i] + (me == 0 ? kOffset : 0);
  const auto other = ctx.exchange(ctx.peer(), Phase::TruncReveal, c);

  RingTensor out(x.shape());
  for (std::size_t i = 0; i < n; ++i) {
    const Ring opened = c[i] + other[i];
    Ring v = Ring{0} - dealt[i];
    if ((opened >> 63) == 0) v += dealt[n + i] << (64 - shift);
    if (me == 0) v += (opened >> shift) - (kOffset >> shift);
    out[static_cast<std::int64_t>(i)] = v;
  }
  return out;
}

RingTensor truncate_local(int party, const RingTensor& x, int shift) {
  check_shift(shift);
  RingTensor out(x.shape());
  if (party == 2) return out;
  for (std::int64_t i = 0; i < x.size(); ++i) {
    out[i] = party == 0 ? to_ring(to_signed(x[i]) >> shift)
                        : Ring{0} - to_ring(to_signed(Ring{0} - x[i]) >> shift);
  }
  return out;
}

RingTensor public_div(net::PartyContext& ctx, const RingTensor& x, std::int64_t divisor) {
  if (divisor <= 0) throw ValidationError("public divisor must be positive");
  const auto d = static_cast<std::uint64_t>(divisor);
  if (std::has_single_bit(d)) return truncate(ctx, x, std::countr_zero(d));
  RingTensor out(x.shape());
  if (ctx.is_helper()) return out;
  for (std::int64_t i = 0; i < x.size(); ++i) {
    out[i] = ctx.party() == 0
                 ? to_ring(ir::floor_div(to_signed(x[i]), divisor))
                 : Ring{0} - to_ring(ir::floor_div(to_signed(Ring{0} - x[i]), divisor));
  }
  return out;
}

}  // namespace trio::mpc
