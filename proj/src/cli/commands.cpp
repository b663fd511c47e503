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

#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>

#include "json.hpp"
#include "trio/compiler/lower.hpp"
#include "trio/compiler/quantize.hpp"
#include "trio/compiler/sweep.hpp"
#include "trio/ir/container.hpp"
#include "trio/ir/interpreter.hpp"
#include "trio/ir/printer.hpp"
#include "trio/kernels/parallel.hpp"
#include "trio/mpc/beaver.hpp"
#include "trio/mpc/executor.hpp"
#include "trio/net/dealer.hpp"
#include "trio/net/mesh.hpp"
#include "trio/tensor_io.hpp"

namespace trio::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Every *.tmpt file in `dir`, sorted by name. A file holds either one input
// or a batch of inputs stacked along a new leading axis.
std::vector<FloatTensor> load_calibration(const fs::path& dir, const Shape& input_shape) {
  if (!fs::is_directory(dir)) throw UsageError("calibration directory " + dir.string() + " not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".tmpt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<FloatTensor> out;
  const auto per = num_elements(input_shape);
  for (const auto& f : files) {
    const auto t = read_float_tensor(f);
    if (t.shape() == input_shape) {
      out.push_back(t);
      continue;
    }
    const Shape tail(t.shape().begin() + (t.rank() > 0 ? 1 : 0), t.shape().end());
    if (tail != input_shape) {
      throw ShapeError(f.string() + ": shape " + shape_str(t.shape()) +
                       " is neither the model input " + shape_str(input_shape) + " nor a batch of it");
    }
    for (std::int64_t b = 0; b < t.dim(0); ++b) {
      out.emplace_back(input_shape, std::vector<float>(t.data().begin() + b * per,
                                                       t.data().begin() + (b + 1) * per));
    }
  }
  if (out.empty()) throw UsageError("calibration directory " + dir.string() + " has no .tmpt inputs");
  return out;
}

struct Compiled {
  ir::LlilProgram program;
  std::optional<compiler::SweepReport> sweep;
};

Compiled compile_graph(const ir::HlilGraph& g, std::optional<int> scale,
                       const std::optional<fs::path>& sweep_dir) {
  Compiled c;
  int s = 0;
  if (sweep_dir) {
    compiler::SweepConfig cfg;
    cfg.calibration = compiler::make_calibration(g, load_calibration(*sweep_dir, g.input_shape));
    c.sweep = compiler::sweep_scale(g, cfg);
    s = c.sweep->chosen_scale;
  } else if (scale) {
    s = *scale;
  } else {
    throw UsageError("compiling needs --scale N or --sweep DIR");
  }
  c.program = compiler::compile_to_llil(g, s);
  return c;
}

json output_json(const ir::Node& out_node, const AnyTensor& value, std::optional<int> scale) {
  json j;
  json values = json::array();
  std::visit(
      [&](const auto& t) {
        j["shape"] = t.shape();
        using T = typename std::decay_t<decltype(t)>::value_type;
        for (std::int64_t i = 0; i < t.size(); ++i) {
          if constexpr (std::is_same_v<T, float>) {
            if (out_node.op == ir::OpKind::ArgMax) {
              values.push_back(static_cast<std::int64_t>(t[i]));
            } else {
              values.push_back(t[i]);
            }
          } else {
            if (out_node.op == ir::OpKind::ArgMax || !scale) {
              values.push_back(to_signed(t[i]));
            } else {
              values.push_back(compiler::dequantize(t[i], *scale));
            }
          }
        }
      },
      value);
  j["output"] = values;
  if (out_node.op == ir::OpKind::ArgMax) j["class"] = values;
  return j;
}

RingTensor ring_input(const AnyTensor& t, int scale) {
  if (const auto* f = std::get_if<FloatTensor>(&t)) return compiler::quantize(*f, scale);
  return std::get<RingTensor>(t);
}

void agree_on_flags(net::PartyContext& ctx) {
  std::uint8_t mask = 0;
  for (int r : ctx.output_recipients()) mask |= static_cast<std::uint8_t>(1u << r);
  const std::vector<std::uint8_t> mine = {static_cast<std::uint8_t>(ctx.flags().reshaped_conv),
                                          static_cast<std::uint8_t>(ctx.flags().prf_opt), mask};
  for (int p = 0; p < 3; ++p) {
    if (p != ctx.party()) ctx.send_control(p, mine);
  }
  for (int p = 0; p < 3; ++p) {
    if (p == ctx.party()) continue;
    if (ctx.recv_control(p) != mine) {
      throw ProtocolError("party " + std::to_string(p) +
                          " runs with different protocol flags or output recipients");
    }
  }
  ctx.reset_counters();
}

}  // namespace

int cmd_compile(const CompileOptions& o, std::ostream& out) {
  const auto g = ir::load_model(o.model);
  const auto c = compile_graph(g, o.scale, o.sweep_dir);
  fs::path dest = o.out ? *o.out : fs::path(o.model).replace_extension(".llil.tmpc");
  write_file(dest, ir::serialize_program(c.program));
  if (c.sweep) {
    out << c.sweep->to_table();
    write_file(dest.string() + ".sweep.json", c.sweep->to_json().dump(2) + "\n");
  }
  out << fmt::format("scale: {}\n", c.program.scale);
  out << ir::to_text(c.program);
  out << fmt::format("wrote {}\n", dest.string());
  return kExitOk;
}

int cmd_run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  m.validate();
  std::vector<std::string> accessed;
  json result;
  const auto start = Clock::now();

  if (m.backend == Backend::Mpc) {
    auto cfg = net::PartyConfig::load(*m.config);
    accessed.push_back(m.config->string());
    if (m.party && *m.party != cfg.party) {
      throw UsageError(fmt::format("--party {} does not match config party {}", *m.party, cfg.party));
    }
    if (m.naive_conv) cfg.flags.reshaped_conv = false;
    if (m.no_prf_opt) cfg.flags.prf_opt = false;
    const bool helper = cfg.party == 2;
    const auto program = ir::load_program(m.model, helper);
    accessed.push_back(m.model.string());
    std::optional<RingTensor> input;
    if (!helper) {
      if (!m.input) throw UsageError("data parties need an input share");
      input = read_ring_tensor(*m.input);
      accessed.push_back(m.input->string());
    }
    auto ctx = net::connect_mesh(cfg);
    agree_on_flags(ctx);
    const auto value = mpc::run_llil_mpc(ctx, program, input);
    const auto report = ctx.report();
    const fs::path comm_path = m.out ? fs::path(m.out->string() + ".comm.json")
                                     : m.config->parent_path() /
                                           fmt::format("p{}.comm.json", cfg.party);
    write_file(comm_path, report.to_json().dump(2) + "\n");
    result["party"] = cfg.party;
    result["comm_report"] = comm_path.string();
    result["transcript"] = ctx.transcript_digest();
    result["scale"] = program.scale;
    if (value) {
      const auto scales = ir::infer_scales(program);
      result.update(output_json(program.output_node(), *value,
                                scales[static_cast<std::size_t>(program.output)]));
      if (m.out) write_tensor(*m.out, *value);
    } else {
      result["output"] = nullptr;
    }
  } else {
    const auto bytes = read_file(m.model);
    accessed.push_back(m.model.string());
    const auto input = read_tensor(*m.input);
    accessed.push_back(m.input->string());
    if (m.backend == Backend::Float) {
      const auto g = ir::parse_model(bytes);
      const auto* x = std::get_if<FloatTensor>(&input);
      if (!x) throw ValidationError("the float backend needs an f32 input tensor");
      const auto y = ir::eval_float(g, *x);
      result.update(output_json(g.output_node(), y, std::nullopt));
      if (m.out) write_tensor(*m.out, y);
    } else {
      ir::LlilProgram p;
      if (ir::container_format(bytes) == "hlil") {
        p = compile_graph(ir::parse_model(bytes), m.scale, m.sweep_dir).program;
      } else {
        p = ir::parse_program(bytes);
      }
      ir::OverflowMonitor monitor;
      const auto y = ir::eval_fixed(p, ring_input(input, p.scale), &monitor);
      if (monitor.overflowed) {
        throw OverflowError(fmt::format("fixed-point value left the guard band at node {}",
                                        monitor.first_node));
      }
      const auto scales = ir::infer_scales(p);
      result["scale"] = p.scale;
      result.update(output_json(p.output_node(), y, scales[static_cast<std::size_t>(p.output)]));
      if (m.out) write_tensor(*m.out, y);
    }
  }
  const char* names[] = {"float", "fixed", "mpc"};
  result["backend"] = names[static_cast<int>(m.backend)];
  result["elapsed_ms"] = ms_since(start);
  if (m.verbose) {
    result["files_read"] = accessed;
    for (const auto& f : accessed) err << "read " << f << "\n";
  }
  out << result.dump() << "\n";
  return kExitOk;
}

int cmd_deal(const DealOptions& o, std::ostream& out) {
  const auto bytes = read_file(o.program);
  ir::LlilProgram p;
  if (ir::container_format(bytes) == "hlil") {
    p = compile_graph(ir::parse_model(bytes), o.scale, std::nullopt).program;
  } else {
    p = ir::parse_program(bytes);
  }
  if (o.base_port < 1 || o.base_port > 65533) throw UsageError("--base-port must leave room for three ports");
  auto dealt = net::deal_shares(p, ring_input(read_tensor(o.input), p.scale), o.seed,
                                static_cast<std::uint16_t>(o.base_port));
  for (auto& c : dealt.configs) {
    c.flags.reshaped_conv = !o.naive_conv;
    c.flags.prf_opt = !o.no_prf_opt;
    c.output_recipients = o.recipients;
    c.validate();
  }
  net::write_dealt(dealt, o.out);
  json j;
  j["dir"] = o.out.string();
  j["scale"] = p.scale;
  j["files"] = json::array();
  for (const auto& e : fs::directory_iterator(o.out)) j["files"].push_back(e.path().filename().string());
  std::sort(j["files"].begin(), j["files"].end());
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_bench_conv(const BenchConvOptions& o, std::ostream& out) {
  if (o.m < 1 || o.f < 1 || o.channels < 1) throw UsageError("bench-conv: sizes must be positive");
  if (o.f > o.m) throw UsageError("bench-conv: filter larger than image");
  std::mt19937_64 rng(o.seed);
  auto rand_tensor = [&](const Shape& s) {
    RingTensor t(s);
    for (auto& v : t.data()) v = rng();
    return t;
  };
  const Shape img_shape{1, o.m, o.m, o.channels}, flt_shape{o.f, o.f, o.channels, 1};
  const auto img = rand_tensor(img_shape), img0 = rand_tensor(img_shape);
  const auto flt = rand_tensor(flt_shape), flt0 = rand_tensor(flt_shape);
  const auto want = ir::conv2d_ref(img, flt, 1, kernels::Padding::Valid);

  const auto q = static_cast<std::uint64_t>(o.m - o.f + 1);
  const auto m = static_cast<std::uint64_t>(o.m), f2 = static_cast<std::uint64_t>(o.f * o.f * o.channels);
  const std::uint64_t formulas[2] = {2 * q * q * f2 + 2 * f2 + q * q,
                                     2 * m * m * static_cast<std::uint64_t>(o.channels) + 2 * f2 + q * q};
  json rows = json::array();
  std::uint64_t elements[2] = {0, 0};
  out << fmt::format("{:<10} {:>12} {:>12} {:>14} {:>10} {:>8}\n", "mode", "elements", "formula",
                     "bytes", "wall_ms", "correct");
  for (int k = 0; k < 2; ++k) {
    const auto mode = k == 0 ? mpc::ConvMode::Naive : mpc::ConvMode::Reshaped;
    auto ctxs = net::memory_mesh({k == 1, true}, o.seed);
    const auto start = Clock::now();
    const auto outs = net::run_parties(ctxs, [&](net::PartyContext& c) {
      RingTensor x(img_shape), w(flt_shape);
      if (c.party() == 0) {
        x = img0;
        w = flt0;
      } else if (c.party() == 1) {
        x = kernels::sub(img, img0);
        w = kernels::sub(flt, flt0);
      }
      return mpc::conv2d_protocol(c, x, w, 1, kernels::Padding::Valid, mode);
    });
    const double wall = ms_since(start);
    const std::vector<net::CommReport> reps = {ctxs[0].report(), ctxs[1].report(), ctxs[2].report()};
    elements[k] = net::total_sent_elements(reps);
    std::uint64_t bytes = 0;
    for (const auto& r : reps) bytes += r.sent_bytes();
    const bool correct = kernels::add(outs[0], outs[1]) == want;
    const auto symmetry = net::check_counter_symmetry(reps);
    out << fmt::format("{:<10} {:>12} {:>12} {:>14} {:>10.1f} {:>8}\n", k == 0 ? "naive" : "reshaped",
                       elements[k], formulas[k], bytes, wall, correct ? "yes" : "NO");
    rows.push_back({{"mode", k == 0 ? "naive" : "reshaped"},
                    {"elements", elements[k]},
                    {"formula", formulas[k]},
                    {"bytes", bytes},
                    {"wall_ms", wall},
                    {"correct", correct},
                    {"counters_symmetric", symmetry.empty()}});
  }
  const double ratio = static_cast<double>(elements[0]) / static_cast<double>(elements[1]);
  std::string flag = ratio >= 100.0 ? "orders of magnitude" : ratio >= 10.0 ? "order of magnitude" : "";
  out << fmt::format("m={} f={} q={} ratio naive/reshaped = {:.1f}x{}\n", o.m, o.f, q, ratio,
                     flag.empty() ? "" : "  (" + flag + ")");
  if (o.out) {
    json j = {{"m", o.m}, {"f", o.f}, {"q", q}, {"channels", o.channels}, {"modes", rows},
              {"ratio", ratio}, {"flag", flag}};
    write_file(*o.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_report(const ReportOptions& o, std::ostream& out) {
  if (o.reports.empty()) throw UsageError("report: no comm report files given");
  std::vector<net::CommReport> reps;
  for (const auto& f : o.reports) {
    try {
      reps.push_back(net::CommReport::from_json(json::parse(read_file(f))));
    } catch (const json::exception& e) {
      throw ValidationError(f.string() + ": " + e.what());
    }
  }
  out << fmt::format("{:<6} {:<16} {:>14} {:>14} {:>8}\n", "link", "phase", "elements", "bytes", "frames");
  json links = json::array();
  for (const auto& r : reps) {
    for (const auto& e : r.entries) {
      if (e.from != r.party) continue;
      const auto phase = net::phase_from_tag(e.tag);
      const std::string name = phase ? std::string(net::phase_name(*phase)) : std::to_string(e.tag);
      out << fmt::format("P{}->P{}  {:<16} {:>14} {:>14} {:>8}\n", e.from, e.to, name, e.elements,
                         e.bytes, e.frames);
      links.push_back({{"from", e.from}, {"to", e.to}, {"phase", name}, {"elements", e.elements},
                       {"bytes", e.bytes}, {"frames", e.frames}});
    }
  }
  std::uint64_t bytes = 0;
  for (const auto& r : reps) bytes += r.sent_bytes();
  const auto elements = net::total_sent_elements(reps);
  const auto symmetry = reps.size() == 3 ? net::check_counter_symmetry(reps) : std::string();
  std::string audit;
  for (const auto& r : reps) {
    if (r.party == 2) audit = net::audit_helper_ingress(r);
  }
  out << fmt::format("total: {} elements, {} bytes\n", elements, bytes);
  if (reps.size() == 3) out << "counter symmetry: " << (symmetry.empty() ? "ok" : symmetry) << "\n";
  out << "helper ingress: " << (audit.empty() ? "ok" : audit) << "\n";
  if (o.out) {
    json j = {{"links", links},           {"total_elements", elements},
              {"total_bytes", bytes},     {"symmetric", symmetry.empty()},
              {"helper_ingress_ok", audit.empty()}};
    write_file(*o.out, j.dump(2) + "\n");
  }
  return symmetry.empty() && audit.empty() ? kExitOk : kExitProtocol;
}

}  // namespace trio::cli
