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

#include "trio/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace trio {

std::string shape_str(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace le {

void put_u16(std::string& out, std::uint16_t v) {
  for (int i = 0; i < 2; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}
std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace le

namespace {

constexpr char kTensorMagic[4] = {'T', 'M', 'P', 'T'};

template <typename T>
void put_payload(std::string& out, const Tensor<T>& t) {
  if constexpr (std::is_same_v<T, float>) {
    for (float f : t.data()) le::put_u32(out, std::bit_cast<std::uint32_t>(f));
  } else {
    for (Ring v : t.data()) le::put_u64(out, v);
  }
}

}  // namespace

std::string encode_tensor(const AnyTensor& any) {
  std::string out(kTensorMagic, 4);
  std::visit(
      [&](const auto& t) {
        out.push_back(static_cast<char>(t.dtype()));
        if (t.rank() > 255) throw ValidationError("tensor rank exceeds 255");
        out.push_back(static_cast<char>(t.rank()));
        for (auto d : t.shape()) le::put_u32(out, static_cast<std::uint32_t>(d));
        put_payload(out, t);
      },
      any);
  return out;
}

AnyTensor decode_tensor(std::string_view bytes) {
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < 6 || std::memcmp(p, kTensorMagic, 4) != 0) {
    throw ValidationError("tensor file: bad magic");
  }
  const auto dtype = p[4];
  const std::size_t rank = p[5];
  if (dtype > 1) throw ValidationError("tensor file: unknown dtype " + std::to_string(dtype));
  std::size_t off = 6;
  if (bytes.size() < off + 4 * rank) throw ValidationError("tensor file: truncated header");
  Shape shape;
  for (std::size_t i = 0; i < rank; ++i, off += 4) {
    const auto d = le::get_u32(p + off);
    if (d == 0) throw ValidationError("tensor file: zero dimension");
    shape.push_back(d);
  }
  const auto n = static_cast<std::size_t>(num_elements(shape));
  const std::size_t width = dtype == 0 ? 4 : 8;
  if (bytes.size() != off + n * width) {
    throw ValidationError("tensor file: payload length " + std::to_string(bytes.size() - off) +
                          " does not match shape " + shape_str(shape));
  }
  if (dtype == 0) {
    std::vector<float> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = std::bit_cast<float>(le::get_u32(p + off + 4 * i));
    return FloatTensor(std::move(shape), std::move(data));
  }
  std::vector<Ring> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = le::get_u64(p + off + 8 * i);
  return RingTensor(std::move(shape), std::move(data));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

void write_tensor(const std::filesystem::path& path, const AnyTensor& t) {
  write_file(path, encode_tensor(t));
}

AnyTensor read_tensor(const std::filesystem::path& path) { return decode_tensor(read_file(path)); }

FloatTensor read_float_tensor(const std::filesystem::path& path) {
  auto t = read_tensor(path);
  if (auto* f = std::get_if<FloatTensor>(&t)) return std::move(*f);
  throw ValidationError(path.string() + ": expected an f32 tensor");
}

RingTensor read_ring_tensor(const std::filesystem::path& path) {
  auto t = read_tensor(path);
  if (auto* r = std::get_if<RingTensor>(&t)) return std::move(*r);
  throw ValidationError(path.string() + ": expected an i64 tensor");
}

}  // namespace trio
