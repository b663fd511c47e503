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

#include "trio/cli/cli.hpp"

#include <algorithm>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace trio::cli {

void RunManifest::validate() const {
  if (backend == Backend::Mpc && !config) throw UsageError("--backend mpc needs --config PATH");
  if (backend != Backend::Mpc && !input) throw UsageError("run needs an input tensor");
  if (scale && sweep_dir) throw UsageError("--scale and --sweep are mutually exclusive");
  if (sweep_dir && !std::filesystem::is_directory(*sweep_dir)) {
    throw UsageError("calibration directory " + sweep_dir->string() + " not found");
  }
  if (party && (*party < 0 || *party > 2)) throw UsageError("--party must be 0, 1 or 2");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const OverflowError*>(&e)) return kExitOverflow;
  if (dynamic_cast<const ProtocolError*>(&e)) return kExitProtocol;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitValidation;
  if (dynamic_cast<const IoError*>(&e)) return kExitValidation;
  return kExitInternal;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"trio: fixed-point compiler and three-party secure inference runtime", "trio"};
  app.require_subcommand(1);

  CompileOptions compile;
  std::string sweep_dir;
  auto* c = app.add_subcommand("compile", "Lower a float model to fixed-point code");
  c->add_option("model", compile.model, "HLIL model container")->required();
  auto* c_scale = c->add_option("--scale", compile.scale, "Fractional bits s");
  auto* c_sweep = c->add_option("--sweep", sweep_dir, "Pick s by sweeping over calibration inputs in DIR");
  c_scale->excludes(c_sweep);
  c->add_option("--out", compile.out, "Output LLIL container");

  RunManifest run;
  std::string backend = "fixed", run_sweep;
  auto* r = app.add_subcommand("run", "Evaluate a model with one backend");
  r->add_option("model", run.model, "Model, program or share-program container")->required();
  r->add_option("input", run.input, "Input tensor or input share");
  r->add_option("--backend", backend, "float, fixed or mpc")
      ->check(CLI::IsMember({"float", "fixed", "mpc"}));
  auto* r_scale = r->add_option("--scale", run.scale, "Fractional bits s");
  auto* r_sweep = r->add_option("--sweep", run_sweep, "Calibration directory for the sweep");
  r_scale->excludes(r_sweep);
  r->add_option("--party", run.party, "Party id (must match the config)");
  r->add_option("--config", run.config, "Party config JSON");
  r->add_flag("--naive-conv", run.naive_conv, "Mask the im2col matrix instead of the image");
  r->add_flag("--no-prf-opt", run.no_prf_opt, "Send both helper shares instead of one");
  r->add_option("--seed", run.seed, "Seed");
  r->add_option("--out", run.out, "Write the output tensor here");
  r->add_flag("--verbose", run.verbose, "List every file read");

  DealOptions deal;
  auto* d = app.add_subcommand("deal", "Split a program and an input into party share files");
  d->add_option("program", deal.program, "LLIL program (or HLIL model with --scale)")->required();
  d->add_option("input", deal.input, "Input tensor (f32 is quantized, i64 used as is)")->required();
  d->add_option("--out", deal.out, "Output directory")->required();
  d->add_option("--scale", deal.scale, "Scale when compiling an HLIL model");
  d->add_option("--seed", deal.seed, "Seed for shares and keys");
  d->add_option("--base-port", deal.base_port, "First of three consecutive localhost ports");
  d->add_option("--recipients", deal.recipients, "Parties that learn the output")->delimiter(',');
  d->add_flag("--naive-conv", deal.naive_conv, "Configure parties for naive convolution");
  d->add_flag("--no-prf-opt", deal.no_prf_opt, "Configure parties to send both helper shares");

  BenchConvOptions bench;
  auto* b = app.add_subcommand("bench-conv", "Compare convolution protocol modes");
  b->add_option("m", bench.m, "Image side")->required();
  b->add_option("f", bench.f, "Filter side")->required();
  b->add_option("--channels", bench.channels, "Input channels");
  b->add_option("--seed", bench.seed, "Seed");
  b->add_option("--out", bench.out, "Write a JSON report here");

  ReportOptions report;
  auto* p = app.add_subcommand("report", "Summarise per-party communication reports");
  p->add_option("reports", report.reports, "CommReport JSON files")->required();
  p->add_option("--out", report.out, "Write a JSON summary here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) {
      if (!sweep_dir.empty()) compile.sweep_dir = sweep_dir;
      if (compile.sweep_dir && !std::filesystem::is_directory(*compile.sweep_dir)) {
        throw UsageError("calibration directory " + compile.sweep_dir->string() + " not found");
      }
      if (!compile.scale && !compile.sweep_dir) throw UsageError("compile needs --scale N or --sweep DIR");
      return cmd_compile(compile, out);
    }
    if (r->parsed()) {
      run.backend = backend == "float" ? Backend::Float : backend == "mpc" ? Backend::Mpc : Backend::Fixed;
      if (!run_sweep.empty()) run.sweep_dir = run_sweep;
      return cmd_run(run, out, err);
    }
    if (d->parsed()) return cmd_deal(deal, out);
    if (b->parsed()) return cmd_bench_conv(bench, out);
    if (p->parsed()) return cmd_report(report, out);
  } catch (const std::exception& e) {
    err << "trio: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace trio::cli
