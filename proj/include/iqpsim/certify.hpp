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

// Parity checks, stabilizer bounds and the certification decision.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iqpsim/bits.hpp"
#include "iqpsim/gf2poly.hpp"
#include "iqpsim/protocol.hpp"
#include "iqpsim/qstate.hpp"

namespace iqpsim {

/// d_i f(v) xor v_i; 0 means the shot passed. `site` is 0-based.
bool parity(const Polynomial& f, int site, const BitString& v);

struct VerificationRecord {
  CubicPolynomial f;
  int site = 0;
  BitString v;
  bool pi = false;

  /// Computes pi from (f, site, v).
  static VerificationRecord make(CubicPolynomial f, int site, BitString v);
};

/// Records of the Verify transcripts, using the recorded byproducts.
std::vector<VerificationRecord> verification_records(const std::vector<Transcript>& transcripts);

struct EquivalenceReport {
  double parity_mean = 0;   // <(-1)^pi> over the X_i / Z-elsewhere measurement
  double stabilizer = 0;    // Tr(rho h_f^(i))
  double discrepancy = 0;
  bool ok = false;
  std::string failure;
};

/// Computes both sides of <(-1)^pi> = Tr(rho h) independently.
EquivalenceReport equivalence_oracle(const DensityState& rho, const Polynomial& f, int site, double tol = 1e-10);

/// 1 - (n/2)(1 - avg_h). Non-negative only for avg_h >= 1 - 2/n.
double fidelity_lower_bound(double avg_h, int n);
/// sqrt((n/2)(1 - avg_h)), clamped at 0 below.
double distance_bound(double avg_h, int n);
/// exp(-2 zeta^2 N).
double hoeffding_pfail(double zeta, std::size_t N);

struct CertificationParams {
  double eta0_rational = 1.0 / 86.0;
  double eta0_precise = 0.01169;
  double epsilon0 = 23.0 / 24.0;
  double mu = 1.0;
  int n = 0;
  /// Smaller mu is Inconclusive regardless of N.
  double mu_floor = 1.0;

  /// eta0_rational^2 / n.
  double threshold() const;
  /// (eta0_precise^2 - eta0_rational^2) / n.
  double zeta() const;
  /// ceil(mu n^2).
  std::size_t required_samples() const;
  void validate() const;
};

enum class Verdict { Accept, Reject, Inconclusive };
const char* to_string(Verdict v);

struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  double mean_pi = 0;
  double threshold = 0;
  /// Hoeffding bound exp(-2 zeta^2 N) on accepting a bad state.
  double confidence_bound = 1;
  std::size_t N = 0;
  std::size_t required = 0;
  double mu = 0;
  int n = 0;
  /// exp(-2.9138e-6 mu^2), reported for comparison only.
  double p_fail_reference = 1;
  std::string reason;
};

/// Throws std::invalid_argument on an empty record list.
Decision certify(const std::vector<VerificationRecord>& records, const CertificationParams& params);
nlohmann::json to_json(const Decision& d);

/// Mean of ngap^4(a + b + c) over every quadratic b and linear c, computed as
/// 2^{-n} sum_s D_{a+b}(s)^2 averaged over b. Exhaustive in b.
double byproduct_fourth_moment(const CubicPolynomial& a);
/// 3 * 2^{-2n}.
double fourth_moment_bound(int n);

/// eta/delta + 2/(2 + (1 - 4 delta)^2), for 0 < delta <= 1/4.
double failure_bound(double eta, double delta);

struct Eta0Result {
  double eta0 = 0;
  double delta_star = 0;
};

/// Largest eta with min_delta failure_bound(eta, delta) = epsilon0.
/// Throws std::domain_error when epsilon0 <= 2/3 (no eta > 0 works).
Eta0Result optimize_eta0(double epsilon0);

}  // namespace iqpsim
