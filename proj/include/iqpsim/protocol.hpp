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

// Preparation schedule, shot simulation and transcript statistics.
//
// Noise injection points (NoiseModel):
//   meas_flip          flips recorded outcome bits, both the preparation bits t
//                      and the final s or v. The state follows the true t.
//   correlation_length with L > 1, aligned blocks of L bits flip together.
//   depolarizing       per logical qubit before the final measurement. Shots
//                      sample a Pauli trajectory (I, X, Y, Z uniform with
//                      probability p); simulate_preparation applies the
//                      exact channel to a density matrix.
//   dephasing          as depolarizing, Z only.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iqpsim/bits.hpp"
#include "iqpsim/gadgets.hpp"
#include "iqpsim/gf2poly.hpp"
#include "iqpsim/noise.hpp"
#include "iqpsim/qstate.hpp"

namespace iqpsim {

struct ScheduleOptions {
  /// Varies the order inside each triple so every pair meets. Off only for
  /// the negative control.
  bool rotate_triples = true;
};

struct Schedule {
  int n = 0;
  CubicPolynomial a;
  std::vector<GadgetInstance> steps;
  std::vector<Triple> triple_order;
  /// Total outcome bits.
  std::size_t m = 0;
  /// Symmetric n x n tally of pairs sharing a CZ byproduct in a CCZ gadget.
  std::vector<std::vector<int>> adjacency_counts;
  bool rotation_enabled = true;

  int adjacency(int i, int j) const { return adjacency_counts.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)); }
  std::size_t count(GadgetKind kind) const;
};

/// Throws std::invalid_argument for n < 3 or a with non-cubic terms.
Schedule build_schedule(const CubicPolynomial& a, ScheduleOptions options = {});

/// Packed outcome bits, bit i in word i / 64 at position i % 64.
struct Outcomes {
  std::size_t m = 0;
  std::vector<std::uint64_t> words;

  Outcomes() = default;
  explicit Outcomes(std::size_t m_) : m(m_), words((m_ + 63) / 64) {}
  static Outcomes random(std::size_t m, Rng& rng);

  bool operator[](std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) words[i >> 6] |= bit; else words[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) { words[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  std::size_t weight() const;
  friend bool operator==(const Outcomes&, const Outcomes&) = default;
};

struct Byproducts {
  Polynomial b;  // quadratic
  Polynomial c;  // linear
};

/// Folds every gadget frame for outcomes t. The result satisfies
/// prepared state = |psi_{a+b+c}>, up to global phase.
Byproducts fold_byproducts(const Schedule& schedule, const Outcomes& t);

/// Reference fold built from ByproductFrame values, push_frame and
/// frame_compose. Slow; used to cross-check fold_byproducts.
Byproducts fold_byproducts_reference(const Schedule& schedule, const Outcomes& t);

/// Simulates the logical circuit lane by lane on a dense vector: Pauli
/// byproducts, swaps of line positions and CCZ/CZ gates, starting from |+>^n.
DenseState simulate_lanes(const Schedule& schedule, const Outcomes& t);

/// Applies independent flips with probability p to bits [0, len) of a bit
/// source, in aligned blocks of correlation_length.
std::vector<std::size_t> draw_flips(std::size_t len, const NoiseModel& noise, Rng& rng);

struct Preparation {
  Outcomes t_true;
  Outcomes t_recorded;
  Byproducts recorded;
  CubicPolynomial f_true;
  std::variant<DenseState, DensityState> state;
};

/// Draws t, folds it and builds the output state. The density path is used
/// iff the noise acts on the state.
Preparation simulate_preparation(const Schedule& schedule, const NoiseModel& noise, Rng& rng);

enum class Mode { Sample, Verify, Alternate };
const char* to_string(Mode mode);
Mode parse_mode(const std::string& s);

struct Transcript {
  std::uint64_t seed = 0;
  Mode mode = Mode::Sample;  // Sample or Verify
  CubicPolynomial a;
  Outcomes t;
  Polynomial b;
  Polynomial c;
  std::optional<BitString> s;
  std::optional<int> site;  // 0-based
  std::optional<BitString> v;

  /// a + b + c as recorded.
  CubicPolynomial f() const;
};

struct RunOptions {
  Mode mode = Mode::Sample;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  NoiseModel noise;
  /// OpenMP threads; 0 leaves the runtime default.
  int workers = 0;
};

/// One shot with stream shot_seed(options.seed, index).
Transcript run_shot(const Schedule& schedule, const RunOptions& options, std::size_t index);
/// Shots in parallel; output is independent of the worker count.
std::vector<Transcript> run(const Schedule& schedule, const RunOptions& options);
std::vector<Transcript> run_serial(const Schedule& schedule, const RunOptions& options);

class CoarseGrained {
 public:
  CoarseGrained(int n, std::size_t total) : n_(n), total_(total) {}

  int num_qubits() const { return n_; }
  std::size_t total() const { return total_; }
  void add(const Polynomial& b, std::uint64_t c_eff);

  /// Joint probability of (b, c_eff).
  double probability(const Polynomial& b, std::uint64_t c_eff) const;
  /// Distinct observed b values.
  std::vector<Polynomial> b_values() const;
  /// Conditional distribution of c_eff at fixed b; throws if b never occurred.
  Distribution slice(const Polynomial& b) const;
  std::size_t count(const Polynomial& b) const;
  /// l1 distance of the joint to 2^{-n_b} D_{a+b}(c_eff), summed over all b.
  /// Requires n_b + n within the distribution cap.
  double l1_to_ideal(const CubicPolynomial& a) const;

 private:
  int n_;
  std::size_t total_;
  std::map<std::vector<std::uint64_t>, std::map<std::uint64_t, std::size_t>> counts_;
};

/// Throws std::invalid_argument on Verify transcripts or mixed a.
CoarseGrained coarse_grain(const std::vector<Transcript>& transcripts);

struct CoefficientStat {
  std::string name;  // "b_12", "c_3", 1-based
  double frequency = 0;
  double chi2 = 0;
  double p_value = 1;
  bool flagged = false;
};

struct UniformityReport {
  std::size_t samples = 0;
  std::vector<CoefficientStat> coefficients;
  /// Pearson correlation between coefficient bits; 0 where undefined.
  std::vector<std::vector<double>> correlation;
  double max_abs_correlation = 0;
  bool all_pass = false;
};

inline constexpr std::size_t kMinUniformitySamples = 1000;
inline constexpr double kUniformityAlpha = 0.01;

/// Chi-square test (1 dof) per b and c coefficient.
UniformityReport uniformity_report(const std::vector<Transcript>& transcripts);
UniformityReport uniformity_report(const std::vector<Byproducts>& byproducts);

}  // namespace iqpsim
