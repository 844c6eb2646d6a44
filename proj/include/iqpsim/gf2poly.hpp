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

// Binary polynomials of degree <= 3 over GF(2)^n, their gap statistic and the
// X-basis output distributions of the associated sampling states.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "iqpsim/bits.hpp"

namespace iqpsim {

using Triple = std::array<int, 3>;
using Pair = std::array<int, 2>;

/// GF(2) polynomial of degree <= 3 in n variables, including a constant bit.
///
/// Coefficients are kept as dense bit vectors in colex order, so addition is a
/// word-wise XOR and the representation is canonical. Variable indices are
/// 0-based here; the JSON form in io.hpp is 1-based.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n);

  static Polynomial from_terms(int n, std::span<const Triple> cubic, std::span<const Pair> quadratic,
                               std::span<const int> linear, bool constant = false);

  int num_qubits() const { return n_; }

  void toggle_cubic(int i, int j, int k);
  void toggle_quadratic(int i, int j);
  void toggle_linear(int i);
  void toggle_constant() { constant_ = !constant_; }
  /// Toggles the product of the listed variables; repeated variables collapse
  /// (x*x = x on GF(2)), and an empty list is the constant 1.
  void toggle_monomial(std::span<const int> vars);

  bool cubic(int i, int j, int k) const;
  bool quadratic(int i, int j) const;
  bool linear(int i) const { return (linear_ & qubit_bit(n_, check(i))) != 0; }
  bool constant() const { return constant_; }
  /// Linear coefficients in amplitude-index layout.
  std::uint64_t linear_mask() const { return linear_; }

  /// Terms in lexicographic order, 0-based strictly increasing tuples.
  std::vector<Triple> cubic_terms() const;
  std::vector<Pair> quadratic_terms() const;
  std::vector<int> linear_terms() const;
  std::size_t num_terms() const;

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  Polynomial cubic_part() const;
  Polynomial quadratic_part() const;
  Polynomial linear_part() const;
  Polynomial without_constant() const;

  /// Value at the basis index x (amplitude-index layout).
  bool evaluate(std::uint64_t x) const;

  /// Adds shift(monomial, d) in place, i.e. the expansion of
  /// prod_{q in vars} (x_q + d_q). Only touches O(1) coefficients.
  void add_shifted_monomial(std::span<const int> vars, std::uint64_t d);

  /// Packed cubic/quadratic coefficient words; bit r is the colex rank r.
  std::span<const std::uint64_t> cubic_words() const { return cubic_; }
  std::span<const std::uint64_t> quadratic_words() const { return quadratic_; }

  Polynomial& operator+=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int check(int i) const;

  int n_ = 0;
  std::vector<std::uint64_t> cubic_;
  std::vector<std::uint64_t> quadratic_;
  std::uint64_t linear_ = 0;
  bool constant_ = false;
};

/// Cubic polynomial f = a + b + c without a constant term.
class CubicPolynomial {
 public:
  CubicPolynomial() = default;
  explicit CubicPolynomial(int n) : p_(n) {}
  /// Rejects a polynomial with its constant bit set.
  explicit CubicPolynomial(Polynomial p);

  int num_qubits() const { return p_.num_qubits(); }
  const Polynomial& poly() const { return p_; }
  operator const Polynomial&() const { return p_; }  // NOLINT(google-explicit-constructor)

  CubicPolynomial& operator+=(const CubicPolynomial& o) {
    p_ += o.p_;
    return *this;
  }
  friend CubicPolynomial operator+(CubicPolynomial a, const CubicPolynomial& b) { return a += b; }
  friend bool operator==(const CubicPolynomial&, const CubicPolynomial&) = default;

 private:
  Polynomial p_;
};

/// Probability vector over the 2^n outcomes, indexed in amplitude layout.
struct Distribution {
  int n = 0;
  std::vector<double> weights;

  double operator()(const BitString& s) const { return weights.at(s.bits); }
  double total() const;
  /// Throws unless entries are >= 0 and sum to 1 within tol.
  void validate(double tol = 1e-12) const;
};

// Canonical colex ranks, independent of n.
std::size_t pair_rank(int i, int j);
std::size_t triple_rank(int i, int j, int k);
std::size_t num_pairs(int n);
std::size_t num_triples(int n);

bool evaluate(const Polynomial& p, const BitString& x);

/// d_i p: p(x + e_i) - p(x). Never contains x_i.
Polynomial partial_derivative(const Polynomial& p, int i);

/// p'(x) = p(x xor d), expanded at the coefficient level.
Polynomial shift(const Polynomial& p, const BitString& d);
Polynomial shift(const Polynomial& p, std::uint64_t d);

/// Packed truth table of p (bit x of the result is p(x)); min one word.
std::vector<std::uint64_t> truth_table(const Polynomial& p);

/// #zeros - #ones over all 2^n inputs. Exact.
std::int64_t gap_count(const Polynomial& p);
/// gap_count / 2^n, in [-1, 1]. Subject to the brute-force cap.
double ngap(const Polynomial& p);

/// D_f(s) = ngap^2(f + s) for every s, via a Walsh-Hadamard transform.
Distribution distribution(const Polynomial& f);

/// Signed Walsh spectrum W(s) = sum_x (-1)^{f(x) + s.x} (no normalization).
std::vector<std::int64_t> walsh_spectrum(const Polynomial& f);

struct PolyParts {
  bool cubic = false;
  bool quadratic = false;
  bool linear = false;
};

/// Each selected coefficient is an independent fair bit drawn from rng.
CubicPolynomial random_cubic(int n, PolyParts parts, Rng& rng);

}  // namespace iqpsim
