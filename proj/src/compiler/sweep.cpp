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

#include "trio/compiler/sweep.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "trio/compiler/lower.hpp"
#include "trio/compiler/quantize.hpp"
#include "trio/ir/interpreter.hpp"

namespace trio::compiler {

namespace {

const char* metric_name(SweepMetric m) {
  return m == SweepMetric::ArgmaxAgreement ? "argmax-agreement" : "max-abs-error";
}

double worst(SweepMetric m) {
  return m == SweepMetric::ArgmaxAgreement ? 0.0 : std::numeric_limits<double>::infinity();
}

bool better(SweepMetric m, double a, double b) {
  return m == SweepMetric::ArgmaxAgreement ? a > b : a < b;
}

// Evaluates one scale; never throws for overflow.
SweepEntry evaluate_scale(const ir::HlilGraph& graph, const SweepConfig& cfg, int scale) {
  SweepEntry e;
  e.scale = scale;
  ir::LlilProgram program;
  try {
    program = compile_to_llil(graph, scale);
  } catch (const OverflowError&) {
    e.overflow = true;
    e.metric = worst(cfg.metric);
    return e;
  }
  const bool index_output = program.output_node().op == ir::OpKind::ArgMax;
  std::size_t agree = 0;
  double max_err = 0.0;
  for (const auto& sample : cfg.calibration) {
    RingTensor fixed;
    try {
      ir::OverflowMonitor monitor;
      fixed = ir::eval_fixed(program, quantize(sample.input, scale), &monitor);
      e.overflow = e.overflow || monitor.overflowed;
    } catch (const OverflowError&) {
      e.overflow = true;
      max_err = std::numeric_limits<double>::infinity();
      continue;
    }
    if (index_output) {
      bool same = true;
      for (std::int64_t i = 0; i < fixed.size(); ++i) {
        const double diff = std::fabs(static_cast<double>(to_signed(fixed[i])) - sample.reference[i]);
        same = same && diff == 0.0;
        max_err = std::max(max_err, diff);
      }
      agree += same;
    } else {
      const auto got = ir::argmax_ring(fixed);
      const auto want = ir::argmax_float(sample.reference);
      bool same = true;
      for (std::int64_t i = 0; i < got.size(); ++i) same = same && got[i] == static_cast<Ring>(want[i]);
      agree += same;
      for (std::int64_t i = 0; i < fixed.size(); ++i) {
        max_err = std::max(max_err, std::fabs(dequantize(fixed[i], scale) - sample.reference[i]));
      }
    }
  }
  e.metric = cfg.metric == SweepMetric::ArgmaxAgreement
                 ? static_cast<double>(agree) / static_cast<double>(cfg.calibration.size())
                 : max_err;
  return e;
}

}  // namespace

const SweepEntry& SweepReport::at(int scale) const {
  for (const auto& e : entries) {
    if (e.scale == scale) return e;
  }
  throw std::out_of_range("sweep report has no entry for scale " + std::to_string(scale));
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json j;
  j["metric"] = metric_name(metric);
  j["chosen_scale"] = chosen_scale;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je{{"scale", e.scale}, {"overflow", e.overflow}};
    if (std::isfinite(e.metric)) {
      je["metric"] = e.metric;
    } else {
      je["metric"] = nullptr;
    }
    j["entries"].push_back(je);
  }
  return j;
}

std::string SweepReport::to_table() const {
  std::ostringstream os;
  os << fmt::format("{:>5}  {:>18}  {}\n", "scale", metric_name(metric), "overflow");
  for (const auto& e : entries) {
    os << fmt::format("{:>5}  {:>18.6g}  {}{}\n", e.scale, e.metric, e.overflow ? "yes" : "no",
                      e.scale == chosen_scale ? "   <- chosen" : "");
  }
  return os.str();
}

std::vector<CalibrationSample> make_calibration(const ir::HlilGraph& graph,
                                                const std::vector<FloatTensor>& inputs) {
  std::vector<CalibrationSample> out;
  out.reserve(inputs.size());
  for (const auto& x : inputs) out.push_back({x, ir::eval_float(graph, x)});
  return out;
}

SweepReport sweep_scale(const ir::HlilGraph& graph, const SweepConfig& cfg) {
  if (cfg.s_min <= 0 || cfg.s_min > cfg.s_max || cfg.s_max > 30) {
    throw ValidationError("sweep: need 0 < s_min <= s_max <= 30");
  }
  if (cfg.calibration.empty()) throw ValidationError("sweep: calibration set is empty");

  SweepReport report;
  report.metric = cfg.metric;
  const int count = cfg.s_max - cfg.s_min + 1;
  report.entries.resize(static_cast<std::size_t>(count));
  std::vector<std::string> errors(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      report.entries[static_cast<std::size_t>(i)] = evaluate_scale(graph, cfg, cfg.s_min + i);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& err : errors) {
    if (!err.empty()) throw ValidationError("sweep: " + err);
  }

  const bool any_clean = std::any_of(report.entries.begin(), report.entries.end(),
                                     [](const SweepEntry& e) { return !e.overflow; });
  const SweepEntry* best = nullptr;
  for (const auto& e : report.entries) {
    if (any_clean && e.overflow) continue;
    if (!best || better(cfg.metric, e.metric, best->metric)) best = &e;
  }
  report.chosen_scale = best->scale;
  return report;
}

}  // namespace trio::compiler
