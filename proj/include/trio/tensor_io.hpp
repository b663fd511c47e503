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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "trio/tensor.hpp"

namespace trio {

using AnyTensor = std::variant<FloatTensor, RingTensor>;

// Tensor file layout: "TMPT", u8 dtype (0=f32, 1=i64), u8 rank,
// rank x u32 dims, then the little-endian payload.
std::string encode_tensor(const AnyTensor& t);
AnyTensor decode_tensor(std::string_view bytes);

void write_tensor(const std::filesystem::path& path, const AnyTensor& t);
AnyTensor read_tensor(const std::filesystem::path& path);

FloatTensor read_float_tensor(const std::filesystem::path& path);
RingTensor read_ring_tensor(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

namespace le {

void put_u16(std::string& out, std::uint16_t v);
void put_u32(std::string& out, std::uint32_t v);
void put_u64(std::string& out, std::uint64_t v);
std::uint16_t get_u16(const unsigned char* p);
std::uint32_t get_u32(const unsigned char* p);
std::uint64_t get_u64(const unsigned char* p);

}  // namespace le

}  // namespace trio
