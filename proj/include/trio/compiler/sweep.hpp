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

#include <string>
#include <vector>

#include "json.hpp"
#include "trio/ir/graph.hpp"

namespace trio::compiler {

enum class SweepMetric { ArgmaxAgreement, MaxAbsError };

struct CalibrationSample {
  FloatTensor input;
  FloatTensor reference;  // eval_float output for `input`
};

struct SweepConfig {
  int s_min = 8;
  int s_max = 24;
  std::vector<CalibrationSample> calibration;
  SweepMetric metric = SweepMetric::ArgmaxAgreement;
};

struct SweepEntry {
  int scale = 0;
  double metric = 0.0;
  bool overflow = false;
};

struct SweepReport {
  SweepMetric metric = SweepMetric::ArgmaxAgreement;
  std::vector<SweepEntry> entries;  // ascending scale
  int chosen_scale = 0;

  const SweepEntry& at(int scale) const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

// Runs eval_float over `inputs` to produce reference outputs.
std::vector<CalibrationSample> make_calibration(const ir::HlilGraph& graph,
                                                const std::vector<FloatTensor>& inputs);

// Compiles and evaluates the graph at every scale in [s_min, s_max]. The
// chosen scale has the best metric among scales that did not overflow
// (all scales if every one did); ties go to the smaller scale.
SweepReport sweep_scale(const ir::HlilGraph& graph, const SweepConfig& cfg);

}  // namespace trio::compiler
