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

#include "trio/crypto/prf.hpp"

#include <openssl/evp.h>

#include <cstring>

#include "trio/errors.hpp"

namespace trio::crypto {

class AesEcb {
 public:
  explicit AesEcb(const Key128& key) : ctx_(EVP_CIPHER_CTX_new()) {
    if (!ctx_ || EVP_EncryptInit_ex(ctx_, EVP_aes_128_ecb(), nullptr, key.data(), nullptr) != 1) {
      throw ProtocolError("AES-128 initialisation failed");
    }
    EVP_CIPHER_CTX_set_padding(ctx_, 0);
  }
  ~AesEcb() { EVP_CIPHER_CTX_free(ctx_); }
  AesEcb(const AesEcb&) = delete;
  AesEcb& operator=(const AesEcb&) = delete;

  void encrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
    int len = 0;
    if (EVP_EncryptUpdate(ctx_, out.data(), &len, in.data(), static_cast<int>(in.size())) != 1 ||
        static_cast<std::size_t>(len) != in.size()) {
      throw ProtocolError("AES-128 encryption failed");
    }
  }

 private:
  EVP_CIPHER_CTX* ctx_;
};

namespace {

void put_le(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Key128 key_from_hex(std::string_view hex) {
  if (hex.size() != 32) throw ValidationError("key must be 32 hex digits");
  Key128 key{};
  for (std::size_t i = 0; i < 16; ++i) {
    const int hi = hex_value(hex[2 * i]), lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ValidationError("key contains a non-hex digit");
    key[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return key;
}

std::string key_to_hex(const Key128& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : key) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

Key128 derive_key(std::uint64_t seed, std::string_view label) {
  Sha256 h;
  h.update({reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
  std::uint8_t s[8];
  put_le(s, seed);
  h.update(s);
  const auto hex = h.hex_digest();
  return key_from_hex(hex.substr(0, 32));
}

PrfTape::PrfTape(std::shared_ptr<AesEcb> cipher, std::uint64_t stream_id, std::uint64_t start)
    : cipher_(std::move(cipher)), stream_id_(stream_id), counter_(start) {}

void PrfTape::expand_into(std::span<Ring> out) {
  const auto n = static_cast<std::uint64_t>(out.size());
  if (n == 0) return;
  if (counter_ + n < counter_) throw ProtocolError("PRF stream exhausted");
  constexpr std::size_t kBatch = 4096;
  std::vector<std::uint8_t> in(16 * std::min<std::size_t>(kBatch, out.size()));
  std::vector<std::uint8_t> ct(in.size());
  for (std::size_t done = 0; done < out.size();) {
    const auto chunk = std::min(kBatch, out.size() - done);
    for (std::size_t i = 0; i < chunk; ++i) {
      put_le(&in[16 * i], stream_id_);
      put_le(&in[16 * i + 8], counter_ + done + i);
    }
    cipher_->encrypt({in.data(), 16 * chunk}, {ct.data(), 16 * chunk});
    for (std::size_t i = 0; i < chunk; ++i) out[done + i] = get_le(&ct[16 * i]);
    done += chunk;
  }
  counter_ += n;
}

std::vector<Ring> PrfTape::expand(std::size_t n) {
  std::vector<Ring> out(n);
  expand_into(out);
  return out;
}

RingTensor PrfTape::tensor(const Shape& shape) {
  RingTensor t(shape);
  expand_into(t.span());
  return t;
}

Ring PrfTape::next() {
  Ring v;
  expand_into({&v, 1});
  return v;
}

PrfKey::PrfKey(const Key128& key) : key_(key), cipher_(std::make_shared<AesEcb>(key)) {}

PrfTape PrfKey::open(std::uint64_t stream_id) {
  if (!issued_.insert(stream_id).second) {
    throw ProtocolError("PRF stream id " + std::to_string(stream_id) + " reissued");
  }
  return PrfTape(cipher_, stream_id);
}

Ring prf_element(const Key128& key, std::uint64_t stream_id, std::uint64_t index) {
  PrfTape tape(std::make_shared<AesEcb>(key), stream_id, index);
  return tape.next();
}

struct Sha256::State {
  EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : state_(std::make_unique<State>()) {
  state_->ctx = EVP_MD_CTX_new();
  if (!state_->ctx || EVP_DigestInit_ex(state_->ctx, EVP_sha256(), nullptr) != 1) {
    throw ProtocolError("SHA-256 initialisation failed");
  }
}

Sha256::~Sha256() {
  if (state_) EVP_MD_CTX_free(state_->ctx);
}

Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&& other) noexcept {
  if (this != &other) {
    if (state_) EVP_MD_CTX_free(state_->ctx);
    state_ = std::move(other.state_);
  }
  return *this;
}

void Sha256::update(std::span<const std::uint8_t> bytes) {
  EVP_DigestUpdate(state_->ctx, bytes.data(), bytes.size());
}

std::string Sha256::hex_digest() const {
  EVP_MD_CTX* copy = EVP_MD_CTX_new();
  EVP_MD_CTX_copy_ex(copy, state_->ctx);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(copy, md, &len);
  EVP_MD_CTX_free(copy);
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kDigits[md[i] >> 4]);
    out.push_back(kDigits[md[i] & 15]);
  }
  return out;
}

}  // namespace trio::crypto
