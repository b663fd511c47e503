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

#include "trio/net/dealer.hpp"

#include "trio/crypto/prf.hpp"
#include "trio/errors.hpp"
#include "trio/ir/container.hpp"
#include "trio/tensor_io.hpp"

namespace trio::net {

namespace {

constexpr std::uint64_t kInputStream = std::uint64_t{1} << 62;

std::pair<RingTensor, RingTensor> split(crypto::PrfKey& key, std::uint64_t stream,
                                        const RingTensor& value) {
  auto tape = key.open(stream);
  RingTensor s0 = tape.tensor(value.shape());
  RingTensor s1(value.shape());
  for (std::int64_t i = 0; i < value.size(); ++i) s1[i] = value[i] - s0[i];
  return {std::move(s0), std::move(s1)};
}

}  // namespace

DealtShares deal_shares(const ir::LlilProgram& program, const RingTensor& input,
                        std::uint64_t seed, std::uint16_t base_port) {
  ir::validate(program);
  if (input.shape() != program.input_shape) {
    throw ShapeError("input shape " + shape_str(input.shape()) + " does not match program input " +
                     shape_str(program.input_shape));
  }
  crypto::PrfKey key(crypto::derive_key(seed, "dealer"));
  DealtShares out;
  for (auto& p : out.programs) p = program;
  out.programs[2].weights.clear();
  for (const auto& [id, w] : program.weights) {
    auto [w0, w1] = split(key, static_cast<std::uint64_t>(id), w);
    out.programs[0].weights[id] = std::move(w0);
    out.programs[1].weights[id] = std::move(w1);
  }
  auto [x0, x1] = split(key, kInputStream, input);
  out.inputs[0] = std::move(x0);
  out.inputs[1] = std::move(x1);
  out.configs = local_configs(base_port, seed);
  return out;
}

void write_dealt(const DealtShares& dealt, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (int p = 0; p < 3; ++p) {
    const auto stem = dir / ("p" + std::to_string(p));
    write_file(stem.string() + ".tmpc", ir::serialize_program(dealt.programs[p], p != 2));
    dealt.configs[p].save(stem.string() + ".json");
    if (dealt.inputs[p]) write_tensor(stem.string() + ".input.tmpt", *dealt.inputs[p]);
  }
}

}  // namespace trio::net
