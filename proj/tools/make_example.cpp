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

// Writes the synthetic example models into a directory: NAME.tmpc, a sample
// input NAME.input.tmpt and a calibration batch calib/NAME/batch.tmpt.

#include <filesystem>
#include <iostream>
#include <string>

#include "trio/compiler/models.hpp"
#include "trio/ir/container.hpp"
#include "trio/tensor_io.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  namespace models = trio::compiler::models;
  if (argc < 2 || argc > 3) {
    std::cerr << "usage: trio-example DIR [SEED]\n";
    return 2;
  }
  const fs::path dir = argv[1];
  const std::uint64_t seed = argc == 3 ? std::stoull(argv[2]) : 1;
  try {
    fs::create_directories(dir);
    const auto emit = [&](const std::string& name, const trio::ir::HlilGraph& g, float amplitude) {
      trio::write_file(dir / (name + ".tmpc"), trio::ir::serialize_model(g));
      trio::write_tensor(dir / (name + ".input.tmpt"),
                         models::random_input(g.input_shape, seed + 1, amplitude));
      trio::Shape batch{64};
      batch.insert(batch.end(), g.input_shape.begin(), g.input_shape.end());
      fs::create_directories(dir / "calib" / name);
      trio::write_tensor(dir / "calib" / name / "batch.tmpt",
                         models::random_input(batch, seed + 2, amplitude));
    };
    emit("logistic", models::logistic_regression(seed), 1.0f);
    emit("two_layer", models::two_layer(seed), 4.0f);
    emit("cnn", models::small_cnn(seed), 1.0f);
    std::cout << "wrote examples to " << dir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "trio-example: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
