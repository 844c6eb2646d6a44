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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "iqpsim/noise.hpp"

namespace iqpsim::cli {

enum Exit : int { kAccept = 0, kConfigError = 1, kReject = 2, kInconclusive = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int n = 0;                    // 0: take n from the polynomial file
  std::string poly = "random";  // polynomial JSON path or "random"
  std::size_t shots = 0;
  double mu = 1.0;
  NoiseModel noise;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out_dir = ".";
  std::string in_path;  // certify input
  double epsilon0 = 23.0 / 24.0;
  bool rotate_triples = true;

  nlohmann::json to_json() const;
};

// Each returns a process exit code; `log` receives the human-readable report.
int cmd_sample(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_certify(const RunConfig& cfg, std::ostream& log);
int cmd_threshold(const RunConfig& cfg, std::ostream& log);
int cmd_selftest(const RunConfig& cfg, std::ostream& log);
int cmd_gadget_oracle(const RunConfig& cfg, std::ostream& log);

/// Runs `body` and maps exceptions to exit code 1.
int guarded(const RunConfig& cfg, std::ostream& err, int (*body)(const RunConfig&, std::ostream&), std::ostream& log);

}  // namespace iqpsim::cli
