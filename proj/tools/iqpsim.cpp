// Copyright 2026 The iqpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI/CLI.hpp>

#include "commands.hpp"
#include "iqpsim/io.hpp"

namespace {

using iqpsim::cli::RunConfig;

void add_run_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "number of logical qubits");
  sub->add_option("--poly", cfg.poly, "polynomial JSON file, or \"random\"");
  sub->add_option("--noise-flip", cfg.noise.meas_flip, "outcome-bit flip probability");
  sub->add_option("--noise-depol", cfg.noise.depolarizing, "per-qubit depolarizing strength");
  sub->add_option("--noise-corr-len", cfg.noise.correlation_length, "block length of correlated flips");
  sub->add_option("--seed", cfg.seed, "master seed");
  sub->add_option("--workers", cfg.workers, "worker threads (0: runtime default)");
  sub->add_option("--out", cfg.out_dir, "output directory");
  sub->add_flag("--no-rotation{false}", cfg.rotate_triples)->group("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling and verification simulator for random cubic IQP states"};
  app.set_version_flag("--version", iqpsim::io::build_id());
  app.require_subcommand(1);
  RunConfig cfg;

  auto* sample = app.add_subcommand("sample", "run sampling shots");
  add_run_flags(sample, cfg);
  sample->add_option("--shots", cfg.shots, "number of shots");

  auto* verify = app.add_subcommand("verify", "run mu n^2 verification shots and certify");
  add_run_flags(verify, cfg);
  verify->add_option("--mu", cfg.mu, "sample factor, N = ceil(mu n^2)");

  auto* cert = app.add_subcommand("certify", "certify verification transcripts");
  cert->add_option("--in", cfg.in_path, "transcripts JSONL")->required();
  cert->add_option("--mu", cfg.mu, "sample factor, N = ceil(mu n^2)");
  cert->add_option("--out", cfg.out_dir, "output directory");

  auto* threshold = app.add_subcommand("threshold", "optimize the closeness threshold eta0");
  threshold->add_option("--epsilon0", cfg.epsilon0, "allowed estimate-failure fraction");

  auto* selftest = app.add_subcommand("selftest", "run built-in consistency checks");
  selftest->add_option("--seed", cfg.seed, "seed");
  selftest->add_flag("--no-rotation{false}", cfg.rotate_triples)->group("");

  auto* oracle = app.add_subcommand("gadget-oracle", "check the wire gadget and export gadget tables");
  oracle->add_option("--out", cfg.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : iqpsim::cli::kConfigError;
  }

  using namespace iqpsim::cli;
  int (*body)(const RunConfig&, std::ostream&) = nullptr;
  if (*sample) body = cmd_sample;
  else if (*verify) body = cmd_verify;
  else if (*cert) body = cmd_certify;
  else if (*threshold) body = cmd_threshold;
  else if (*selftest) body = cmd_selftest;
  else if (*oracle) body = cmd_gadget_oracle;
  cfg.command = app.get_subcommands().front()->get_name();
  return guarded(cfg, std::cerr, body, std::cout);
}
