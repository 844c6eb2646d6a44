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

#include "iqpsim/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iqpsim {
namespace {

std::size_t dim(int n) { return std::size_t{1} << n; }

void check_arity(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": arity mismatch");
}

void check_qubit(int n, int q) {
  if (q < 0 || q >= n) throw std::out_of_range("qubit index out of range");
}

// In-place X-basis change of every qubit (H^n), unnormalized.
void walsh_in_place(std::vector<Amplitude>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const Amplitude a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

void require_normalized(const DenseState& s) {
  if (std::abs(s.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
}

}  // namespace

DenseState DenseState::plus(int n) {
  require_cap(n, kPureStateCap, "DenseState");
  return {n, std::vector<Amplitude>(dim(n), Amplitude(std::sqrt(std::ldexp(1.0, -n)), 0))};
}

DenseState DenseState::basis(const BitString& x) {
  require_cap(x.n, kPureStateCap, "DenseState");
  DenseState s{x.n, std::vector<Amplitude>(dim(x.n))};
  s.amp[x.bits] = 1.0;
  return s;
}

double DenseState::norm_squared() const {
  double t = 0;
  for (const auto& a : amp) t += std::norm(a);
  return t;
}

DensityState DensityState::from_pure(const DenseState& psi) {
  require_cap(psi.n, kDensityCap, "DensityState");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), static_cast<Eigen::Index>(psi.amp.size()));
  return {psi.n, v * v.adjoint()};
}

DensityState DensityState::maximally_mixed(int n) {
  require_cap(n, kDensityCap, "DensityState");
  const auto d = static_cast<Eigen::Index>(dim(n));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  return {n, std::move(m)};
}

DenseState random_pure(int n, Rng& rng) {
  require_cap(n, kPureStateCap, "random_pure");
  DenseState s{n, std::vector<Amplitude>(dim(n))};
  double norm = 0;
  for (auto& a : s.amp) {
    // Box-Muller on engine-derived uniforms keeps the stream portable.
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform01(rng)));
    const double th = 2.0 * std::numbers::pi * uniform01(rng);
    a = {r * std::cos(th), r * std::sin(th)};
    norm += std::norm(a);
  }
  for (auto& a : s.amp) a /= std::sqrt(norm);
  return s;
}

DensityState random_density(int n, int rank, Rng& rng) {
  require_cap(n, kDensityCap, "random_density");
  if (rank < 1) throw std::invalid_argument("random_density: rank < 1");
  const auto d = static_cast<Eigen::Index>(dim(n));
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  std::vector<double> w(static_cast<std::size_t>(rank));
  double total = 0;
  for (auto& x : w) total += (x = 1e-3 + uniform01(rng));
  for (int k = 0; k < rank; ++k) {
    const auto psi = random_pure(n, rng);
    Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), d);
    rho += (w[static_cast<std::size_t>(k)] / total) * (v * v.adjoint());
  }
  return {n, std::move(rho)};
}

void DensityState::validate(double tol) const {
  if (rho.rows() != static_cast<Eigen::Index>(dim(n)) || rho.cols() != rho.rows())
    throw std::invalid_argument("DensityState: wrong shape");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("DensityState: not Hermitian");
  if (std::abs(rho.trace() - Amplitude(1.0)) > tol)
    throw std::invalid_argument("DensityState: trace is not one");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw std::invalid_argument("DensityState: not PSD");
}

StabilizerObservable make_stabilizer(const Polynomial& f, int site) {
  return {site, partial_derivative(f, site)};
}

DenseState state_from_polynomial(const Polynomial& f) {
  const int n = f.num_qubits();
  require_cap(n, kPureStateCap, "state_from_polynomial");
  const double scale = std::sqrt(std::ldexp(1.0, -n));
  const auto table = truth_table(f.without_constant());
  DenseState s{n, std::vector<Amplitude>(dim(n))};
  for (std::size_t x = 0; x < s.amp.size(); ++x)
    s.amp[x] = ((table[x >> 6] >> (x & 63)) & 1) ? -scale : scale;
  return s;
}

DenseState apply_diagonal(DenseState state, const Polynomial& p) {
  check_arity(state.n, p.num_qubits(), "apply_diagonal");
  const auto table = truth_table(p.without_constant());
  for (std::size_t x = 0; x < state.amp.size(); ++x)
    if ((table[x >> 6] >> (x & 63)) & 1) state.amp[x] = -state.amp[x];
  return state;
}

DenseState apply_pauli(DenseState state, const BitString& x_mask, const BitString& z_mask) {
  check_arity(state.n, x_mask.n, "apply_pauli");
  check_arity(state.n, z_mask.n, "apply_pauli");
  if (x_mask.bits) {
    std::vector<Amplitude> out(state.amp.size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x ^ x_mask.bits] = state.amp[x];
    state.amp = std::move(out);
  }
  if (z_mask.bits)
    for (std::size_t x = 0; x < state.amp.size(); ++x)
      if (parity64(x & z_mask.bits)) state.amp[x] = -state.amp[x];
  return state;
}

void apply_swap(DenseState& state, int q1, int q2) {
  check_qubit(state.n, q1);
  check_qubit(state.n, q2);
  if (q1 == q2) return;
  const std::uint64_t m1 = qubit_bit(state.n, q1), m2 = qubit_bit(state.n, q2);
  for (std::size_t x = 0; x < state.amp.size(); ++x)
    if ((x & m1) && !(x & m2)) std::swap(state.amp[x], state.amp[(x ^ m1) | m2]);
}

void apply_hadamard(DenseState& state, int q) {
  check_qubit(state.n, q);
  const std::uint64_t m = qubit_bit(state.n, q);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t x = 0; x < state.amp.size(); ++x)
    if (!(x & m)) {
      const Amplitude a = state.amp[x], b = state.amp[x | m];
      state.amp[x] = r * (a + b);
      state.amp[x | m] = r * (a - b);
    }
}

Distribution x_distribution(const DenseState& state) {
  std::vector<Amplitude> v = state.amp;
  walsh_in_place(v);
  Distribution d{state.n, std::vector<double>(v.size())};
  const double scale = std::ldexp(1.0, -state.n);
  for (std::size_t s = 0; s < v.size(); ++s) d.weights[s] = std::norm(v[s]) * scale;
  return d;
}

Distribution x_distribution(const DensityState& rho) {
  // Q(s) = 2^-n (W rho W)[s, s] with W the unnormalized Walsh matrix.
  const std::size_t d = dim(rho.n);
  Eigen::MatrixXcd m = rho.rho;
  std::vector<Amplitude> line(d);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < d; ++r) line[r] = m(static_cast<Eigen::Index>(r), c);
    walsh_in_place(line);
    for (std::size_t r = 0; r < d; ++r) m(static_cast<Eigen::Index>(r), c) = line[r];
  }
  Distribution out{rho.n, std::vector<double>(d)};
  for (std::size_t s = 0; s < d; ++s) {
    // Row s of (W rho) times column s of W.
    Amplitude acc = 0;
    for (std::size_t y = 0; y < d; ++y) {
      const Amplitude v = m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(y));
      acc += parity64(s & y) ? -v : v;
    }
    out.weights[s] = std::max(0.0, acc.real() * std::ldexp(1.0, -rho.n));
  }
  return out;
}

std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding slack: fall back to the last outcome with nonzero weight.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0) return i;
  return probs.size() - 1;
}

BitString measure_all_X(const DenseState& state, Rng& rng) {
  require_normalized(state);
  return {state.n, sample_index(x_distribution(state).weights, rng)};
}

BitString measure_verification(const DenseState& state, int site, Rng& rng) {
  require_normalized(state);
  DenseState rotated = state;
  apply_hadamard(rotated, site);
  std::vector<double> probs(rotated.amp.size());
  for (std::size_t x = 0; x < probs.size(); ++x) probs[x] = std::norm(rotated.amp[x]);
  return {state.n, sample_index(probs, rng)};
}

double stabilizer_expectation(const DensityState& rho, const StabilizerObservable& h) {
  check_arity(rho.n, h.derivative.num_qubits(), "stabilizer_expectation");
  check_qubit(rho.n, h.site);
  if ((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("stabilizer_expectation: input is not Hermitian");
  // h|x> = (-1)^{d f(x)} |x ^ e_i>, so Tr(rho h) = sum_x (-1)^{d f(x)} rho[x, x ^ e_i].
  const std::uint64_t m = qubit_bit(rho.n, h.site);
  const auto table = truth_table(h.derivative);
  double acc = 0;
  for (std::size_t x = 0; x < dim(rho.n); ++x) {
    const double v = rho.rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x ^ m)).real();
    acc += ((table[x >> 6] >> (x & 63)) & 1) ? -v : v;
  }
  return acc;
}

double stabilizer_expectation(const DenseState& psi, const StabilizerObservable& h) {
  check_arity(psi.n, h.derivative.num_qubits(), "stabilizer_expectation");
  check_qubit(psi.n, h.site);
  const std::uint64_t m = qubit_bit(psi.n, h.site);
  const auto table = truth_table(h.derivative);
  Amplitude acc = 0;
  for (std::size_t x = 0; x < psi.amp.size(); ++x) {
    const Amplitude v = std::conj(psi.amp[x]) * psi.amp[x ^ m];
    acc += ((table[x >> 6] >> (x & 63)) & 1) ? -v : v;
  }
  return acc.real();
}

double fidelity_squared(const DenseState& psi, const DensityState& rho) {
  check_arity(psi.n, rho.n, "fidelity_squared");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), static_cast<Eigen::Index>(psi.amp.size()));
  return (v.adjoint() * rho.rho * v)(0, 0).real();
}

double trace_distance(const DensityState& rho, const DensityState& sigma) {
  check_arity(rho.n, sigma.n, "trace_distance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.rho - sigma.rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double l1_distance(const Distribution& q, const Distribution& d) {
  check_arity(q.n, d.n, "l1_distance");
  if (q.weights.size() != d.weights.size()) throw std::invalid_argument("l1_distance: size");
  double t = 0;
  for (std::size_t s = 0; s < q.weights.size(); ++s) t += std::abs(q.weights[s] - d.weights[s]);
  return t;
}

Metrics metrics(const DenseState& psi, const DensityState& rho) {
  return {fidelity_squared(psi, rho), trace_distance(rho, DensityState::from_pure(psi)),
          l1_distance(x_distribution(rho), x_distribution(psi))};
}

void apply_pauli_channel(DensityState& rho, int q, double px, double py, double pz) {
  check_qubit(rho.n, q);
  const double pi = 1.0 - px - py - pz;
  if (pi < -1e-15 || px < 0 || py < 0 || pz < 0) throw std::invalid_argument("invalid probability");
  if (px == 0 && py == 0 && pz == 0) return;
  const std::uint64_t m = qubit_bit(rho.n, q);
  const auto d = static_cast<Eigen::Index>(dim(rho.n));
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto ua = static_cast<std::uint64_t>(a), ub = static_cast<std::uint64_t>(b);
      const Amplitude same = rho.rho(a, b);
      const Amplitude flipped = rho.rho(static_cast<Eigen::Index>(ua ^ m), static_cast<Eigen::Index>(ub ^ m));
      // Z rho Z picks up (-1)^{a_q + b_q}; Y rho Y = X Z rho Z X.
      const bool z_sign = ((ua ^ ub) & m) != 0;
      const Amplitude zz = z_sign ? -same : same;
      const Amplitude yy = z_sign ? -flipped : flipped;
      out(a, b) = pi * same + px * flipped + py * yy + pz * zz;
    }
  rho.rho = std::move(out);
}

DensityState apply_noise(const DensityState& rho, const NoiseModel& model) {
  model.validate();
  DensityState out = rho;
  for (int q = 0; q < rho.n; ++q) {
    if (model.depolarizing > 0) {
      const double p = model.depolarizing / 4.0;
      apply_pauli_channel(out, q, p, p, p);
    }
    if (model.dephasing > 0) apply_pauli_channel(out, q, 0, 0, model.dephasing);
  }
  return out;
}

DensityState apply_noise(const DenseState& psi, const NoiseModel& model) {
  return apply_noise(DensityState::from_pure(psi), model);
}

}  // namespace iqpsim
