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

// Acceptance run. One PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "iqpsim/certify.hpp"
#include "iqpsim/gadgets.hpp"
#include "iqpsim/protocol.hpp"
#include "oracles.hpp"

using namespace iqpsim;

namespace {

struct Result {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Polynomial with_b(const Polynomial& a, std::uint64_t bm, std::uint64_t c) {
  const int n = a.num_qubits();
  Polynomial f = a;
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (bm >> k & 1) f.toggle_quadratic(i, j);
  for (int q = 0; q < n; ++q)
    if (c & qubit_bit(n, q)) f.toggle_linear(q);
  return f;
}

Result threshold() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = optimize_eta0(23.0 / 24.0);
  const double dt = seconds_since(t0);
  const bool ok = std::abs(r.eta0 - 0.01169) <= 1e-4 && r.eta0 > 1.0 / 86.0 && dt < 1.0;
  return {ok, fmt("eta0=%.8f delta*=%.6f (1/86=%.8f), %.3f s", r.eta0, r.delta_star, 1.0 / 86.0, dt)};
}

Result transform() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2);
  double worst = 0, worst_sum = 0;
  for (int n = 3; n <= 12; ++n)
    for (int k = 0; k < 100; ++k) {
      const auto f = random_cubic(n, {true, true, true}, rng);
      const auto d = distribution(f);
      const auto ref = oracle::distribution(f);
      for (std::size_t s = 0; s < ref.size(); ++s) worst = std::max(worst, std::abs(d.weights[s] - ref[s]));
      worst_sum = std::max(worst_sum, std::abs(d.total() - 1.0));
    }
  const double dt = seconds_since(t0);
  return {worst < 1e-12 && worst_sum < 1e-12 && dt < 30,
          fmt("max |D - brute force| = %.2e, max |sum - 1| = %.2e over n=3..12, %.2f s", worst, worst_sum, dt)};
}

Result fourth_moment() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(3);
  double worst_ratio = 0, worst_lib = 0;
  for (int n = 3; n <= 6; ++n) {
    const std::uint64_t nb = num_pairs(n);
    for (int k = 0; k < 10; ++k) {
      const auto a = random_cubic(n, {true, false, false}, rng);
      double acc = 0;
      for (std::uint64_t bm = 0; bm < (std::uint64_t{1} << nb); ++bm)
        for (double d : oracle::distribution(with_b(a.poly(), bm, 0))) acc += d * d;
      const double moment = acc / std::ldexp(1.0, static_cast<int>(nb) + n);
      worst_ratio = std::max(worst_ratio, moment / fourth_moment_bound(n));
      worst_lib = std::max(worst_lib, std::abs(byproduct_fourth_moment(a) - moment) / moment);
    }
  }
  const double dt = seconds_since(t0);
  return {worst_ratio <= 1.0 && worst_lib < 1e-12 && dt < 120,
          fmt("max <ngap^4> / (3 * 2^-2n) = %.4f, library vs direct rel. diff %.1e, %.2f s", worst_ratio, worst_lib, dt)};
}

Result end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(4);
  double worst = 0;
  int runs = 0;
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 100; ++k, ++runs) {
      const auto sched = build_schedule(random_cubic(n, {true, false, false}, rng));
      const auto t = Outcomes::random(sched.m, rng);
      const auto by = fold_byproducts(sched, t);
      const auto psi = state_from_polynomial(sched.a.poly() + by.b + by.c);
      worst = std::max(worst, oracle::residual_up_to_phase(oracle::vec(simulate_lanes(sched, t)), oracle::vec(psi)));
    }
  const double dt = seconds_since(t0);
  return {worst < 1e-12 && dt < 60, fmt("%d runs, max amplitude residual %.2e, %.2f s", runs, worst, dt)};
}

Result verification_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(5);
  double worst = 0;
  for (int n = 2; n <= 5; ++n)
    for (int k = 0; k < 100; ++k) {
      const auto f = random_cubic(n, {true, true, true}, rng);
      const auto rho = random_density(n, 1 + k % 4, rng);
      worst = std::max(worst, equivalence_oracle(rho, f, static_cast<int>(uniform_below(rng, n))).discrepancy);
    }
  const auto sched = build_schedule(random_cubic(5, {true, false, false}, rng));
  RunOptions o;
  o.mode = Mode::Verify;
  o.shots = 100000;
  o.seed = 5;
  std::size_t failures = 0;
  for (const auto& r : verification_records(run(sched, o))) failures += r.pi;
  const double dt = seconds_since(t0);
  return {worst < 1e-10 && failures == 0,
          fmt("max discrepancy %.2e over 400 states; %zu of 100000 ideal Verify shots with pi=1, %.2f s", worst, failures, dt)};
}

struct ChainCounts {
  int fidelity = 0, l1 = 0, trace = 0, trace_doubled = 0;
  double worst_trace_ratio = 0;
};

Result bound_chain(ChainCounts& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(6);
  for (int k = 0; k < 10000; ++k) {
    const int n = 1 + k % 5;
    const auto f = random_cubic(n, {true, true, true}, rng);
    const auto psi = state_from_polynomial(f);
    // Mixtures of the target with random states of rank 1..4, weight skewed toward the target.
    const double lam = std::pow(uniform01(rng), 2);
    const auto other = random_density(n, 1 + static_cast<int>(uniform_below(rng, 4)), rng);
    const DensityState rho{n, (1 - lam) * DensityState::from_pure(psi).rho + lam * other.rho};
    double h = 0;
    for (int i = 0; i < n; ++i) h += stabilizer_expectation(rho, make_stabilizer(f, i));
    h /= n;
    const auto m = metrics(psi, rho);
    const double slack = 1e-10;
    if (m.fidelity_squared < fidelity_lower_bound(h, n) - slack) ++c.fidelity;
    if (m.l1_distance > m.trace_distance + slack) ++c.l1;
    const double root = std::sqrt(std::max(0.0, 1 - m.fidelity_squared));
    if (m.trace_distance > root + slack) ++c.trace;
    if (m.trace_distance > 2 * root + slack) ++c.trace_doubled;
    if (root > 0) c.worst_trace_ratio = std::max(c.worst_trace_ratio, m.trace_distance / root);
  }
  const double dt = seconds_since(t0);
  return {c.fidelity == 0 && c.l1 == 0 && c.trace == 0,
          fmt("violations over 10000 states: F^2 bound %d, |Q-D|_1 <= Tr|rho-psi| %d, Tr|rho-psi| <= sqrt(1-F^2) %d, %.2f s",
              c.fidelity, c.l1, c.trace, dt)};
}

std::string flagged(const UniformityReport& r) {
  std::string s;
  for (const auto& c : r.coefficients)
    if (c.flagged) s += (s.empty() ? "" : ",") + c.name;
  return s.empty() ? "none" : s;
}

double min_p(const UniformityReport& r) {
  double p = 1;
  for (const auto& c : r.coefficients) p = std::min(p, c.p_value);
  return p;
}

Result uniformity() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(7);
  const auto a = random_cubic(4, {true, false, false}, rng);
  RunOptions o;
  o.shots = 10000;
  o.seed = 7;
  const auto ideal = uniformity_report(run(build_schedule(a), o));
  o.noise.meas_flip = 0.1;
  o.noise.correlation_length = 2;
  const auto noisy = uniformity_report(run(build_schedule(a), o));
  RunOptions oc;
  oc.shots = 10000;
  oc.seed = 8;
  const auto control = uniformity_report(run(build_schedule(CubicPolynomial(4), {false}), oc));
  bool control_b14 = false;
  for (const auto& c : control.coefficients)
    if (c.name == "b_14") control_b14 = c.flagged;
  const double dt = seconds_since(t0);
  return {ideal.all_pass && noisy.all_pass && control_b14 && !control.all_pass,
          fmt("ideal min p %.3f (flagged %s); correlated L=2 min p %.3f (flagged %s); no-rotation control flagged %s, %.2f s",
              min_p(ideal), flagged(ideal).c_str(), min_p(noisy), flagged(noisy).c_str(), flagged(control).c_str(), dt)};
}

Result discrimination() {
  const auto t0 = std::chrono::steady_clock::now();
  int accepts = 0, rejects = 0;
  double worst_clean = 0, best_noisy = 1;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(splitmix64(seed));
    const auto sched = build_schedule(random_cubic(6, {true, false, false}, rng));
    CertificationParams p;
    p.n = 6;
    p.mu = 100000.0 / 36.0;
    RunOptions o;
    o.mode = Mode::Verify;
    o.shots = p.required_samples();
    o.seed = seed;
    const auto clean = certify(verification_records(run(sched, o)), p);
    accepts += clean.verdict == Verdict::Accept;
    worst_clean = std::max(worst_clean, clean.mean_pi);
    o.noise.meas_flip = 0.05;
    const auto noisy = certify(verification_records(run(sched, o)), p);
    rejects += noisy.verdict == Verdict::Reject;
    best_noisy = std::min(best_noisy, noisy.mean_pi);
  }
  const double dt = seconds_since(t0);
  return {accepts == 20 && rejects == 20 && dt < 600,
          fmt("N=100000: zero noise %d/20 Accept (max mean pi %.2e), flip 0.05 %d/20 Reject (min mean pi %.4f), %.1f s",
              accepts, worst_clean, rejects, best_noisy, dt)};
}

Result sampling() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(9);
  const auto sched = build_schedule(random_cubic(4, {true, false, false}, rng));
  const auto t = Outcomes::random(sched.m, rng);
  const auto by = fold_byproducts(sched, t);
  const auto state = simulate_lanes(sched, t);
  const auto ideal = oracle::distribution(sched.a.poly() + by.b + by.c);
  const std::size_t N = 100000;
  std::vector<double> counts(16);
  for (std::size_t k = 0; k < N; ++k) counts[measure_all_X(state, rng).bits] += 1;
  double l1 = 0;
  for (std::size_t s = 0; s < 16; ++s) l1 += std::abs(counts[s] / N - ideal[s]);
  const double bound = 3 * std::sqrt(16.0 / N);
  const double dt = seconds_since(t0);
  return {l1 < bound, fmt("l1 = %.5f, bound %.5f, %.2f s", l1, bound, dt)};
}

Result wire_oracle() {
  const auto r = wire_dense_oracle();
  double worst_p = 0, worst_res = 0;
  for (const auto& b : r.branches) {
    worst_p = std::max(worst_p, std::abs(b.probability - 0.25));
    worst_res = std::max(worst_res, b.residual);
  }
  return {r.ok && r.branches.size() == 4 && worst_p < 1e-15 && worst_res < 1e-12,
          fmt("%zu branches, max |p - 1/4| = %.1e, max residual %.1e", r.branches.size(), worst_p, worst_res)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const Result& r) {
    std::printf("[%s] %2d %s: %s\n", r.ok ? "PASS" : "FAIL", id, name, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.ok;
  };
  report(1, "threshold reproduction", threshold());
  report(2, "transform correctness", transform());
  report(3, "fourth-moment bound", fourth_moment());
  report(4, "ideal end-to-end", end_to_end());
  report(5, "verification identity", verification_identity());
  ChainCounts chain;
  report(6, "bound-chain soundness", bound_chain(chain));
  std::printf("     info: with the factor 2, Tr|rho-psi| <= 2 sqrt(1-F^2) has %d violations; max Tr|rho-psi| / sqrt(1-F^2) = %.4f\n",
              chain.trace_doubled, chain.worst_trace_ratio);
  report(7, "byproduct uniformity", uniformity());
  report(8, "certification discrimination", discrimination());
  report(9, "sampling statistics", sampling());
  report(10, "wire gadget oracle", wire_oracle());
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
