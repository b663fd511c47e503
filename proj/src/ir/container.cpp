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

#include "trio/ir/container.hpp"

#include <bit>
#include <cstring>

#include "json.hpp"
#include "trio/tensor_io.hpp"

namespace trio::ir {

using nlohmann::json;

namespace {

const char* padding_name(kernels::Padding p) {
  return p == kernels::Padding::Same ? "SAME" : "VALID";
}

json attrs_to_json(const Node& n) {
  json a = json::object();
  const auto& at = n.attrs;
  switch (n.op) {
    case OpKind::Conv2D:
      a["stride"] = at.stride;
      a["padding"] = padding_name(at.padding);
      break;
    case OpKind::MaxPool:
    case OpKind::AvgPool:
    case OpKind::SumPool:
      a["window"] = at.window;
      a["stride"] = at.stride;
      break;
    case OpKind::Reshape:
      a["shape"] = at.target_shape;
      break;
    case OpKind::BatchNorm:
      a["epsilon"] = at.epsilon;
      break;
    case OpKind::ScaleDown:
      a["shift"] = at.shift;
      break;
    case OpKind::PublicDiv:
      a["divisor"] = at.divisor;
      break;
    default:
      break;
  }
  return a;
}

Attrs attrs_from_json(const json& a, const std::string& where) {
  Attrs at;
  if (!a.is_object()) throw ValidationError(where + ": attrs must be an object");
  at.stride = a.value("stride", std::int64_t{1});
  at.window = a.value("window", std::int64_t{1});
  at.epsilon = a.value("epsilon", 1e-3);
  at.shift = a.value("shift", 0);
  at.divisor = a.value("divisor", std::int64_t{1});
  if (a.contains("shape")) at.target_shape = a.at("shape").get<Shape>();
  const auto pad = a.value("padding", std::string("VALID"));
  if (pad == "VALID") {
    at.padding = kernels::Padding::Valid;
  } else if (pad == "SAME") {
    at.padding = kernels::Padding::Same;
  } else {
    throw ValidationError(where + ": unknown padding '" + pad + "'");
  }
  return at;
}

struct Header {
  json doc;
  std::string_view blob;
};

Header split_container(std::string_view bytes) {
  if (bytes.size() < kModelMagic.size() + 4 || bytes.substr(0, kModelMagic.size()) != kModelMagic) {
    throw ValidationError("model container: bad magic");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const auto json_len = le::get_u32(p + kModelMagic.size());
  const auto json_off = kModelMagic.size() + 4;
  if (bytes.size() < json_off + json_len) throw ValidationError("model container: truncated header");
  Header h;
  try {
    h.doc = json::parse(bytes.substr(json_off, json_len));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model container: malformed JSON: ") + e.what());
  }
  h.blob = bytes.substr(json_off + json_len);
  return h;
}

template <typename W>
Tensor<W> read_weight(std::string_view blob, std::uint64_t offset, const Shape& shape,
                      const std::string& where) {
  const auto n = static_cast<std::uint64_t>(num_elements(shape));
  constexpr std::uint64_t width = sizeof(W);
  if (offset % width != 0 || offset > blob.size() || (blob.size() - offset) / width < n) {
    throw ValidationError(where + ": weight range [" + std::to_string(offset) + ", +" +
                          std::to_string(n * width) + ") exceeds blob of " +
                          std::to_string(blob.size()) + " bytes");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(blob.data()) + offset;
  std::vector<W> data(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<W, float>) {
      data[i] = std::bit_cast<float>(le::get_u32(p + 4 * i));
    } else {
      data[i] = le::get_u64(p + 8 * i);
    }
  }
  return Tensor<W>(shape, std::move(data));
}

template <typename W>
void parse_into(const Header& h, Graph<W>& g, bool allow_missing_weights) {
  const auto& doc = h.doc;
  try {
    const char* want = std::is_same_v<W, float> ? "f32" : "i64";
    if (doc.value("weights_dtype", std::string(want)) != want) {
      throw ValidationError(std::string("model container: expected ") + want + " weights");
    }
    g.input_shape = doc.at("input").at("shape").get<Shape>();
    const auto& nodes = doc.at("nodes");
    if (!nodes.is_array() || nodes.empty()) throw ValidationError("model container: empty node list");
    const bool weights_present = doc.value("weights_present", true);

    // Container ids only need to be unique; they are renumbered densely.
    std::map<std::int64_t, int> remap;
    for (const auto& jn : nodes) {
      Node n;
      n.id = static_cast<int>(g.nodes.size());
      const auto file_id = jn.at("id").get<std::int64_t>();
      const std::string where = "node id " + std::to_string(file_id);
      if (remap.count(file_id)) throw ValidationError(where + ": duplicate id");
      const auto op_str = jn.at("op").get<std::string>();
      const auto op = op_from_name(op_str);
      if (!op) throw ValidationError(where + ": unknown op kind '" + op_str + "'");
      n.op = *op;
      n.name = jn.value("name", std::string());
      n.attrs = attrs_from_json(jn.value("attrs", json::object()), where);
      for (const auto& in : jn.value("inputs", json::array())) {
        auto it = remap.find(in.get<std::int64_t>());
        if (it == remap.end()) {
          throw ValidationError(where + ": dangling input id " + std::to_string(in.get<std::int64_t>()));
        }
        n.inputs.push_back(it->second);
      }
      if (jn.contains("shape")) n.shape = jn.at("shape").get<Shape>();
      if (n.op == OpKind::Const) {
        if (n.shape.empty()) throw ValidationError(where + ": Const without shape");
        for (auto d : n.shape) {
          if (d <= 0) throw ValidationError(where + ": non-positive dimension");
        }
        if (weights_present) {
          g.weights.emplace(n.id, read_weight<W>(h.blob, jn.at("offset").get<std::uint64_t>(),
                                                 n.shape, where));
        } else if (!allow_missing_weights) {
          throw ValidationError(where + ": container carries no weights");
        }
      }
      remap.emplace(file_id, n.id);
      g.nodes.push_back(std::move(n));
    }
    const auto out_id = doc.at("output").get<std::int64_t>();
    auto it = remap.find(out_id);
    if (it == remap.end()) throw ValidationError("output id " + std::to_string(out_id) + " is not a node");
    g.output = it->second;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model container: ") + e.what());
  }
}

template <typename W>
std::string serialize_impl(const Graph<W>& g, json doc, bool include_weights) {
  std::string blob;
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["op"] = op_name(n.op);
    if (!n.name.empty()) jn["name"] = n.name;
    jn["inputs"] = n.inputs;
    const auto attrs = attrs_to_json(n);
    if (!attrs.empty()) jn["attrs"] = attrs;
    if (!n.shape.empty()) jn["shape"] = n.shape;
    if (n.op == OpKind::Const) {
      auto it = g.weights.find(n.id);
      if (it != g.weights.end()) {
        jn["shape"] = it->second.shape();
        if (include_weights) {
          jn["offset"] = blob.size();
          for (W v : it->second.data()) {
            if constexpr (std::is_same_v<W, float>) {
              le::put_u32(blob, std::bit_cast<std::uint32_t>(v));
            } else {
              le::put_u64(blob, v);
            }
          }
        }
      }
    }
    nodes.push_back(std::move(jn));
  }
  doc["weights_dtype"] = std::is_same_v<W, float> ? "f32" : "i64";
  doc["weights_present"] = include_weights;
  doc["input"] = {{"shape", g.input_shape}};
  doc["output"] = g.output;
  doc["nodes"] = std::move(nodes);
  const auto text = doc.dump();
  std::string out(kModelMagic);
  le::put_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  out += blob;
  return out;
}

}  // namespace

HlilGraph parse_model(std::string_view bytes) {
  const auto h = split_container(bytes);
  if (h.doc.value("format", std::string("hlil")) != "hlil") {
    throw ValidationError("model container: expected a floating-point graph");
  }
  HlilGraph g;
  parse_into(h, g, false);
  validate(g);
  return g;
}

std::string serialize_model(const HlilGraph& g) {
  return serialize_impl(g, json{{"format", "hlil"}}, true);
}

std::string container_format(std::string_view bytes) {
  const auto h = split_container(bytes);
  const auto it = h.doc.find("format");
  if (it == h.doc.end() || !it->is_string()) {
    throw ValidationError("model container: missing format field");
  }
  return it->get<std::string>();
}

LlilProgram parse_program(std::string_view bytes, bool allow_missing_weights) {
  const auto h = split_container(bytes);
  if (h.doc.value("format", std::string()) != "llil") {
    throw ValidationError("model container: expected a fixed-point program");
  }
  LlilProgram p;
  parse_into(h, p, allow_missing_weights);
  try {
    p.scale = h.doc.at("scale").get<int>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model container: ") + e.what());
  }
  validate(p, allow_missing_weights);
  return p;
}

std::string serialize_program(const LlilProgram& p, bool include_weights) {
  return serialize_impl(p, json{{"format", "llil"}, {"scale", p.scale}}, include_weights);
}

HlilGraph load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

LlilProgram load_program(const std::filesystem::path& path, bool allow_missing_weights) {
  return parse_program(read_file(path), allow_missing_weights);
}

}  // namespace trio::ir
