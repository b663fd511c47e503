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

#include "trio/mpc/compare.hpp"

#include <numeric>

#include "trio/errors.hpp"
#include "trio/mpc/beaver.hpp"
#include "trio/mpc/dealing.hpp"
#include "trio/mpc/modring.hpp"

namespace trio::mpc {

namespace {

using net::KeyPair;
using net::Phase;

constexpr Ring kAllOnes = ~Ring{0};

// Maps a small signed integer into [0, p).
Ring fp(std::int64_t v) {
  const auto p = static_cast<std::int64_t>(kPrime);
  return static_cast<Ring>(((v % p) + p) % p);
}

std::vector<Ring> bits_of(const std::vector<Ring>& values) {
  std::vector<Ring> bits(values.size() * kBits);
  for (std::size_t k = 0; k < values.size(); ++k) {
    for (int i = 0; i < kBits; ++i) bits[k * kBits + i] = (values[k] >> i) & 1;
  }
  return bits;
}

}  // namespace

std::vector<Ring> private_compare(net::PartyContext& ctx, const std::vector<Ring>& x_bits,
                                  const std::vector<Ring>& r, const std::vector<Ring>& beta,
                                  std::size_t n) {
  if (n == 0) return {};
  const std::size_t m = n * kBits;
  if (ctx.is_helper()) {
    const auto d0 = ctx.recv(0, Phase::PcMsg, m);
    const auto d1 = ctx.recv(1, Phase::PcMsg, m);
    std::vector<Ring> out(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      for (int i = 0; i < kBits; ++i) {
        if (mod_add(d0[k * kBits + i], d1[k * kBits + i], kPrime) == 0) out[k] = 1;
      }
    }
    return out;
  }
  if (x_bits.size() != m || r.size() != n || beta.size() != n) {
    throw ProtocolError("private_compare: operand sizes disagree");
  }

  const auto j = static_cast<std::int64_t>(ctx.party());
  auto tape = ctx.tape(KeyPair::P01, Phase::PcMsg);
  std::vector<Ring> d(m);
  std::array<Ring, kBits> c{};
  std::array<int, kBits> perm{};
  for (std::size_t k = 0; k < n; ++k) {
    const Ring* xb = x_bits.data() + k * kBits;
    const auto mask = tape.expand(3 * kBits);
    const bool special = beta[k] == 1 && r[k] == kAllOnes;
    const Ring t = beta[k] == 0 ? r[k] : r[k] + 1;
    Ring acc = 0;
    for (int i = kBits - 1; i >= 0; --i) {
      const auto x = static_cast<std::int64_t>(xb[i]);
      const auto tb = static_cast<std::int64_t>((t >> i) & 1);
      if (special) {
        const auto u = static_cast<std::int64_t>(mask[kBits + i] % kPrime);
        c[i] = i != 0 ? fp((1 - j) * (u + 1) - j * u) : fp(j == 0 ? u : -u);
        continue;
      }
      const Ring w = fp(x + j * tb - 2 * tb * x);
      c[i] = beta[k] == 0 ? fp(j * tb - x + j + static_cast<std::int64_t>(acc))
                          : fp(-j * tb + x + j + static_cast<std::int64_t>(acc));
      acc = mod_add(acc, w, kPrime);
    }
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = kBits - 1; i > 0; --i) {
      const auto pick = static_cast<int>(mask[2 * kBits + i] % static_cast<Ring>(i + 1));
      std::swap(perm[i], perm[pick]);
    }
    for (int i = 0; i < kBits; ++i) {
      const Ring s = 1 + mask[i] % (kPrime - 1);
      d[k * kBits + perm[i]] = mod_mul(s, c[i], kPrime);
    }
  }
  ctx.send(2, Phase::PcMsg, d);
  return {};
}

std::vector<Ring> share_convert(net::PartyContext& ctx, const std::vector<Ring>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  const Delivery delivery = nonlinear_delivery(ctx);

  if (ctx.is_helper()) {
    const auto a0 = ctx.recv(0, Phase::ScReveal, n);
    const auto a1 = ctx.recv(1, Phase::ScReveal, n);
    std::vector<Ring> x(n), delta(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = a0[k] + a1[k];
      delta[k] = wraps(a0[k], a1[k]);
    }
    deal(ctx, Phase::MsbDeal, bits_of(x), n * kBits, kPrime, delivery);
    deal(ctx, Phase::MsbDeal, delta, n, kOddModulus, delivery);
    const auto eta_p = private_compare(ctx, {}, {}, {}, n);
    deal(ctx, Phase::MsbDeal, eta_p, n, kOddModulus, delivery);
    return {};
  }

  const int j = ctx.party();
  auto tape = ctx.tape(KeyPair::P01, Phase::ScReveal);
  const auto r = tape.expand(n);
  const auto r0 = tape.expand(n);
  const auto eta_pp_raw = tape.expand(n);
  const auto zero = tape.expand(n);

  std::vector<Ring> masked(n), beta(n), eta_pp(n), r_minus_1(n);
  std::vector<Ring> alpha(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Ring r1 = r[k] - r0[k];
    alpha[k] = wraps(r0[k], r1);
    const Ring rj = j == 0 ? r0[k] : r1;
    masked[k] = a[k] + rj;
    beta[k] = wraps(a[k], rj);
    eta_pp[k] = eta_pp_raw[k] & 1;
    r_minus_1[k] = r[k] - 1;
  }
  ctx.send(2, Phase::ScReveal, masked);

  const auto x_bits = deal(ctx, Phase::MsbDeal, {}, n * kBits, kPrime, delivery);
  const auto delta = deal(ctx, Phase::MsbDeal, {}, n, kOddModulus, delivery);
  private_compare(ctx, x_bits, r_minus_1, eta_pp, n);
  const auto eta_p = deal(ctx, Phase::MsbDeal, {}, n, kOddModulus, delivery);

  const Ring N = kOddModulus;
  std::vector<Ring> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    Ring eta = eta_p[k];
    if (eta_pp[k] == 1) eta = mod_sub(j == 0 ? 1 : 0, eta, N);
    Ring theta = mod_add(beta[k], delta[k], N);
    theta = mod_add(theta, eta, N);
    if (j == 0) theta = mod_sub(theta, alpha[k] + 1, N);
    const Ring u = reduce(zero[k], N);
    y[k] = mod_sub(reduce(a[k], N), theta, N);
    y[k] = j == 0 ? mod_add(y[k], u, N) : mod_sub(y[k], u, N);
  }
  return y;
}

std::vector<Ring> compute_msb(net::PartyContext& ctx, const std::vector<Ring>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  const Delivery delivery = nonlinear_delivery(ctx);
  const Shape shape{static_cast<std::int64_t>(n)};

  if (ctx.is_helper()) {
    auto x = ctx.private_tape().expand(n);
    std::vector<Ring> lsb(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = reduce(x[k], kOddModulus);
      lsb[k] = x[k] & 1;
    }
    deal(ctx, Phase::MsbDeal, x, n, kOddModulus, delivery);
    deal(ctx, Phase::MsbDeal, bits_of(x), n * kBits, kPrime, delivery);
    deal(ctx, Phase::MsbDeal, lsb, n, 0, delivery);
    const auto beta_p = private_compare(ctx, {}, {}, {}, n);
    deal(ctx, Phase::MsbDeal, beta_p, n, 0, delivery);
    beaver_mul(ctx, RingTensor(shape), RingTensor(shape), delivery);
    return {};
  }

  const int j = ctx.party();
  const Ring N = kOddModulus;
  const auto x = deal(ctx, Phase::MsbDeal, {}, n, N, delivery);
  const auto x_bits = deal(ctx, Phase::MsbDeal, {}, n * kBits, kPrime, delivery);
  const auto x_lsb = deal(ctx, Phase::MsbDeal, {}, n, 0, delivery);

  std::vector<Ring> masked(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Ring ak = reduce(a[k], N);
    masked[k] = mod_add(mod_add(ak, ak, N), x[k], N);
  }
  const auto other = ctx.exchange(ctx.peer(), Phase::MsbReveal, masked);
  std::vector<Ring> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = mod_add(masked[k], other[k], N);

  auto tape = ctx.tape(KeyPair::P01, Phase::MsbReveal);
  auto beta = tape.expand(n);
  for (auto& b : beta) b &= 1;
  private_compare(ctx, x_bits, r, beta, n);
  const auto beta_p = deal(ctx, Phase::MsbDeal, {}, n, 0, delivery);

  RingTensor gamma(shape), delta(shape);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::int64_t>(k);
    gamma[i] = beta_p[k] + (j == 1 ? beta[k] : 0) - 2 * beta[k] * beta_p[k];
    const Ring r0 = r[k] & 1;
    delta[i] = x_lsb[k] + (j == 1 ? r0 : 0) - 2 * r0 * x_lsb[k];
  }
  const RingTensor theta = beaver_mul(ctx, gamma, delta, delivery);
  std::vector<Ring> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::int64_t>(k);
    out[k] = gamma[i] + delta[i] - 2 * theta[i];
  }
  return out;
}

}  // namespace trio::mpc
