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

#include <stdexcept>
#include <string>

namespace iqpsim {

/// Injection points for noise. See protocol.hpp for where each one acts.
struct NoiseModel {
  /// Probability that a recorded outcome bit (preparation or final) is flipped.
  double meas_flip = 0.0;
  /// Per-logical-qubit depolarizing strength before the final measurement.
  double depolarizing = 0.0;
  /// Per-logical-qubit Z-flip probability before the final measurement.
  double dephasing = 0.0;
  /// Flips act on aligned blocks of this many consecutive bits (0 or 1 = independent).
  int correlation_length = 0;

  void validate() const {
    auto prob = [](double p, const char* what) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("noise: invalid ") + what);
    };
    prob(meas_flip, "meas_flip");
    prob(depolarizing, "depolarizing");
    prob(dephasing, "dephasing");
    if (correlation_length < 0) throw std::invalid_argument("noise: correlation_length < 0");
  }

  bool acts_on_state() const { return depolarizing > 0.0 || dephasing > 0.0; }
  bool is_zero() const { return meas_flip == 0.0 && !acts_on_state(); }
};

}  // namespace iqpsim
