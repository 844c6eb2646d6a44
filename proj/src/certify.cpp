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

#include "iqpsim/certify.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace iqpsim {

bool parity(const Polynomial& f, int site, const BitString& v) {
  if (v.n != f.num_qubits()) throw std::invalid_argument("parity: arity mismatch");
  if (site < 0 || site >= v.n) throw std::out_of_range("parity: site outside 1..n");
  return partial_derivative(f, site).evaluate(v.bits) != v[site];
}

VerificationRecord VerificationRecord::make(CubicPolynomial f, int site, BitString v) {
  const bool pi = parity(f, site, v);
  return {std::move(f), site, v, pi};
}

std::vector<VerificationRecord> verification_records(const std::vector<Transcript>& ts) {
  std::vector<VerificationRecord> out;
  for (const auto& tr : ts)
    if (tr.mode == Mode::Verify) out.push_back(VerificationRecord::make(tr.f(), *tr.site, *tr.v));
  return out;
}

EquivalenceReport equivalence_oracle(const DensityState& rho, const Polynomial& f, int site, double tol) {
  const int n = rho.n;
  require_cap(n, kDensityCap, "equivalence_oracle");
  if (f.num_qubits() != n) throw std::invalid_argument("equivalence_oracle: arity mismatch");
  if (site < 0 || site >= n) throw std::out_of_range("equivalence_oracle: site");
  // Measurement statistics of X on `site`, Z elsewhere: diag(H_i rho H_i).
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  const std::uint64_t e = qubit_bit(n, site);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index x = 0; x < d; ++x) {
    const auto ux = static_cast<std::uint64_t>(x);
    const bool xi = ux & e;
    H(x, static_cast<Eigen::Index>(ux & ~e)) = r;
    H(x, static_cast<Eigen::Index>(ux | e)) = xi ? -r : r;
  }
  const Eigen::MatrixXcd rotated = H * rho.rho * H.adjoint();
  EquivalenceReport rep;
  for (Eigen::Index v = 0; v < d; ++v) {
    const double p = rotated(v, v).real();
    rep.parity_mean += parity(f, site, BitString(n, static_cast<std::uint64_t>(v))) ? -p : p;
  }
  rep.stabilizer = stabilizer_expectation(rho, make_stabilizer(f, site));
  rep.discrepancy = std::abs(rep.parity_mean - rep.stabilizer);
  rep.ok = rep.discrepancy < tol;
  if (!rep.ok)
    rep.failure = "parity mean " + std::to_string(rep.parity_mean) + " vs stabilizer " +
                  std::to_string(rep.stabilizer) + " at site " + std::to_string(site + 1);
  return rep;
}

double fidelity_lower_bound(double avg_h, int n) { return 1.0 - 0.5 * n * (1.0 - avg_h); }

double distance_bound(double avg_h, int n) { return std::sqrt(std::max(0.0, 0.5 * n * (1.0 - avg_h))); }

double hoeffding_pfail(double zeta, std::size_t N) {
  if (zeta < 0) throw std::invalid_argument("hoeffding_pfail: zeta < 0");
  return std::exp(-2.0 * zeta * zeta * static_cast<double>(N));
}

double CertificationParams::threshold() const { return eta0_rational * eta0_rational / n; }

double CertificationParams::zeta() const {
  return (eta0_precise * eta0_precise - eta0_rational * eta0_rational) / n;
}

std::size_t CertificationParams::required_samples() const {
  // Slack absorbs rounding in mu = N / n^2.
  return static_cast<std::size_t>(std::ceil(mu * n * n - 1e-9));
}

void CertificationParams::validate() const {
  if (n < 1) throw std::invalid_argument("certify: n must be positive");
  if (!(mu > 0)) throw std::invalid_argument("certify: mu must be positive");
  if (!(eta0_rational > 0 && eta0_rational <= eta0_precise))
    throw std::invalid_argument("certify: need 0 < eta0_rational <= eta0_precise");
  if (!(epsilon0 > 0 && epsilon0 < 1)) throw std::invalid_argument("certify: epsilon0 outside (0,1)");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Decision certify(const std::vector<VerificationRecord>& records, const CertificationParams& params) {
  params.validate();
  if (records.empty()) throw std::invalid_argument("certify: no verification records");
  Decision d;
  d.N = records.size();
  std::size_t fails = 0;
  for (const auto& r : records) {
    if (r.f.num_qubits() != params.n) throw std::invalid_argument("certify: record arity differs from n");
    fails += r.pi;
  }
  d.mean_pi = static_cast<double>(fails) / static_cast<double>(d.N);
  d.threshold = params.threshold();
  d.confidence_bound = hoeffding_pfail(params.zeta(), d.N);
  d.required = params.required_samples();
  d.mu = params.mu;
  d.n = params.n;
  d.p_fail_reference = std::exp(-2.9138e-6 * params.mu * params.mu);
  if (params.mu < params.mu_floor) {
    d.verdict = Verdict::Inconclusive;
    d.reason = "mu below floor";
  } else if (d.N < d.required) {
    d.verdict = Verdict::Inconclusive;
    d.reason = "fewer than mu n^2 records";
  } else if (d.mean_pi <= d.threshold) {
    d.verdict = Verdict::Accept;
    d.reason = "mean parity within threshold";
  } else {
    d.verdict = Verdict::Reject;
    d.reason = "mean parity above threshold";
  }
  return d;
}

nlohmann::json to_json(const Decision& d) {
  return {{"verdict", to_string(d.verdict)},
          {"mean_pi", d.mean_pi},
          {"threshold", d.threshold},
          {"N", d.N},
          {"required_N", d.required},
          {"mu", d.mu},
          {"n", d.n},
          {"p_fail_bound", d.confidence_bound},
          {"p_fail_reference", d.p_fail_reference},
          {"reason", d.reason}};
}

double byproduct_fourth_moment(const CubicPolynomial& a) {
  const int n = a.num_qubits();
  const auto nb = static_cast<int>(num_pairs(n));
  if (nb > kByproductEnumerationCap)
    throw CapExceeded("byproduct_fourth_moment: too many quadratic coefficients to enumerate");
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  const std::uint64_t count = std::uint64_t{1} << nb;
  double acc = 0;
#pragma omp parallel for reduction(+ : acc) schedule(static)
  for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(count); ++mask) {
    Polynomial f = a.poly();
    for (std::size_t r = 0; r < pairs.size(); ++r)
      if ((mask >> r) & 1) f.toggle_quadratic(pairs[r][0], pairs[r][1]);
    double sq = 0;
    for (double d : distribution(f).weights) sq += d * d;
    acc += sq;
  }
  return std::ldexp(acc / static_cast<double>(count), -n);
}

double fourth_moment_bound(int n) { return 3.0 * std::ldexp(1.0, -2 * n); }

double failure_bound(double eta, double delta) {
  if (!(delta > 0 && delta <= 0.25)) throw std::invalid_argument("failure_bound: delta outside (0, 1/4]");
  if (eta < 0) throw std::invalid_argument("failure_bound: eta < 0");
  const double u = 1.0 - 4.0 * delta;
  return eta / delta + 2.0 / (2.0 + u * u);
}

Eta0Result optimize_eta0(double epsilon0) {
  if (!(epsilon0 > 0 && epsilon0 < 1)) throw std::invalid_argument("optimize_eta0: epsilon0 outside (0,1)");
  if (epsilon0 <= 2.0 / 3.0) throw std::domain_error("optimize_eta0: infeasible epsilon0 (<= 2/3)");
  // failure_bound(eta, delta) = epsilon0 solves to eta(delta) = delta (epsilon0 - 2/(2+(1-4 delta)^2)).
  auto eta_of = [epsilon0](double delta) {
    const double u = 1.0 - 4.0 * delta;
    return delta * (epsilon0 - 2.0 / (2.0 + u * u));
  };
  const auto [delta, neg] =
      boost::math::tools::brent_find_minima([&](double d) { return -eta_of(d); }, 1e-12, 0.25, 40);
  return {-neg, delta};
}

}  // namespace iqpsim
