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

// Dense state-vector and density-matrix simulation of n-qubit sampling states.
//
// Amplitude index x uses the layout of bits.hpp: qubit 1 is the most
// significant bit. All distances use the un-halved trace norm Tr|A|, which is
// twice the conventional trace distance.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "iqpsim/bits.hpp"
#include "iqpsim/gf2poly.hpp"
#include "iqpsim/noise.hpp"

namespace iqpsim {

using Amplitude = std::complex<double>;

struct DenseState {
  int n = 0;
  std::vector<Amplitude> amp;

  /// |+>^n.
  static DenseState plus(int n);
  /// Computational basis state |x>.
  static DenseState basis(const BitString& x);
  double norm_squared() const;
};

struct DensityState {
  int n = 0;
  Eigen::MatrixXcd rho;

  static DensityState from_pure(const DenseState& psi);
  static DensityState maximally_mixed(int n);
  /// Throws unless Hermitian, trace one and PSD within tol.
  void validate(double tol = 1e-10) const;
};

/// Haar-random pure state from complex Gaussian amplitudes.
DenseState random_pure(int n, Rng& rng);
/// Mixture of `rank` random pure states with random weights.
DensityState random_density(int n, int rank, Rng& rng);

/// h_f^(i) = X_i (-1)^{d_i f}.
struct StabilizerObservable {
  int site = 0;
  Polynomial derivative;
};

StabilizerObservable make_stabilizer(const Polynomial& f, int site);

/// |psi_f> with amplitude (-1)^{f(x)} 2^{-n/2}; a constant term is dropped.
DenseState state_from_polynomial(const Polynomial& f);

/// Multiplies amplitude x by (-1)^{p(x)}, ignoring p's constant (global phase).
DenseState apply_diagonal(DenseState state, const Polynomial& p);

/// Applies prod X^{x_i}, then prod Z^{z_i}.
DenseState apply_pauli(DenseState state, const BitString& x_mask, const BitString& z_mask);

void apply_swap(DenseState& state, int q1, int q2);
void apply_hadamard(DenseState& state, int q);

/// |<s_X|psi>|^2 for every s.
Distribution x_distribution(const DenseState& state);
Distribution x_distribution(const DensityState& rho);

/// Outcome of X measurements on every qubit. Throws on an unnormalized state.
BitString measure_all_X(const DenseState& state, Rng& rng);

/// X on `site`, Z elsewhere; v_site is the X outcome.
BitString measure_verification(const DenseState& state, int site, Rng& rng);

/// Draws an index from a probability vector by inverse CDF.
std::size_t sample_index(const std::vector<double>& probs, Rng& rng);

/// Tr(rho h) by contracting X_i with the diagonal (-1)^{d_i f}.
double stabilizer_expectation(const DensityState& rho, const StabilizerObservable& h);
double stabilizer_expectation(const DenseState& psi, const StabilizerObservable& h);

/// <psi|rho|psi>.
double fidelity_squared(const DenseState& psi, const DensityState& rho);
/// Tr|rho - sigma| (no factor 1/2).
double trace_distance(const DensityState& rho, const DensityState& sigma);
/// sum_s |q(s) - d(s)|.
double l1_distance(const Distribution& q, const Distribution& d);

struct Metrics {
  double fidelity_squared = 0;
  double trace_distance = 0;
  double l1_distance = 0;
};

/// All three metrics of rho against the pure reference psi (l1 over X outcomes).
Metrics metrics(const DenseState& psi, const DensityState& rho);

/// rho -> (1 - px - py - pz) rho + px X rho X + py Y rho Y + pz Z rho Z on qubit q.
void apply_pauli_channel(DensityState& rho, int q, double px, double py, double pz);

/// Applies the state-level part of the model (depolarizing, dephasing) to every
/// qubit. meas_flip acts on recorded bits and leaves the state unchanged.
DensityState apply_noise(const DensityState& rho, const NoiseModel& model);
DensityState apply_noise(const DenseState& psi, const NoiseModel& model);

}  // namespace iqpsim
