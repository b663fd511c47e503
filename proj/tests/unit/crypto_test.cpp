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

#include <gtest/gtest.h>

#include <string_view>

#include "trio/crypto/prf.hpp"

namespace trio::crypto {
namespace {

const Key128 kFipsKey = key_from_hex("000102030405060708090a0b0c0d0e0f");

TEST(Prf, MatchesBlockCipherVector) {
  // Block = LE(stream) || LE(index); 00112233..ff encrypts to 69c4e0d8...
  EXPECT_EQ(prf_element(kFipsKey, 0x7766554433221100ull, 0xffeeddccbbaa9988ull),
            0x30047b6ad8e0c469ull);
}

TEST(Prf, SameKeyStreamIndexAgreeAcrossHolders) {
  PrfKey a(derive_key(7, "k01"));
  PrfKey b(derive_key(7, "k01"));
  auto ta = a.open(42);
  auto tb = b.open(42);
  const auto xa = ta.expand(1000);
  std::vector<Ring> xb;
  for (int i = 0; i < 10; ++i) {
    const auto part = tb.expand(100);
    xb.insert(xb.end(), part.begin(), part.end());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_EQ(xa[17], prf_element(derive_key(7, "k01"), 42, 17));
  EXPECT_EQ(ta.counter(), 1000u);
}

TEST(Prf, DistinctStreamsAndKeysDiffer) {
  PrfKey a(derive_key(7, "k01"));
  PrfKey b(derive_key(7, "k02"));
  const auto s1 = a.open(1).expand(8);
  const auto s2 = a.open(2).expand(8);
  const auto s3 = b.open(1).expand(8);
  EXPECT_NE(s1, s2);
  EXPECT_NE(s1, s3);
  EXPECT_NE(derive_key(1, "x"), derive_key(2, "x"));
  EXPECT_NE(derive_key(1, "x"), derive_key(1, "y"));
}

TEST(Prf, ReissuingAStreamIsFatal) {
  PrfKey a(kFipsKey);
  a.open(5);
  EXPECT_TRUE(a.issued(5));
  EXPECT_THROW(a.open(5), ProtocolError);
  EXPECT_NO_THROW(a.open(6));
}

TEST(Prf, ExhaustionIsFatal) {
  PrfTape near_end(nullptr, 1, ~std::uint64_t{0} - 2);
  EXPECT_THROW(near_end.expand(4), ProtocolError);
}

TEST(Prf, RoughlyUniform) {
  PrfKey a(derive_key(3, "uniformity"));
  auto t = a.open(0);
  const auto xs = t.expand(100000);
  double sum = 0.0;
  std::array<int, 64> ones{};
  for (auto x : xs) {
    sum += static_cast<double>(x) / 18446744073709551616.0;
    for (int b = 0; b < 64; ++b) ones[static_cast<std::size_t>(b)] += (x >> b) & 1;
  }
  const double mean = sum / xs.size();
  EXPECT_GT(mean, 0.49);
  EXPECT_LT(mean, 0.51);
  for (int c : ones) {
    EXPECT_GT(c, 49000);
    EXPECT_LT(c, 51000);
  }
}

TEST(Keys, HexRoundTrip) {
  EXPECT_EQ(key_to_hex(kFipsKey), "000102030405060708090a0b0c0d0e0f");
  EXPECT_THROW(key_from_hex("0011"), ValidationError);
  EXPECT_THROW(key_from_hex("zz0102030405060708090a0b0c0d0e0f"), ValidationError);
}

TEST(Sha256, KnownVectors) {
  Sha256 h;
  EXPECT_EQ(h.hex_digest(), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const std::string_view abc = "abc";
  h.update({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()});
  EXPECT_EQ(h.hex_digest(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace trio::crypto
