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

#include "iqpsim/gf2poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "iqpsim/kernels.hpp"

namespace iqpsim {
namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Colex unranking tables shared by every arity.
const std::vector<Triple>& triple_table() {
  static const std::vector<Triple> table = [] {
    std::vector<Triple> t;
    t.reserve(num_triples(kMaxQubits));
    for (int k = 2; k < kMaxQubits; ++k)
      for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i) t.push_back({i, j, k});
    return t;
  }();
  return table;
}

const std::vector<Pair>& pair_table() {
  static const std::vector<Pair> table = [] {
    std::vector<Pair> t;
    t.reserve(num_pairs(kMaxQubits));
    for (int j = 1; j < kMaxQubits; ++j)
      for (int i = 0; i < j; ++i) t.push_back({i, j});
    return t;
  }();
  return table;
}

inline void flip_bit(std::vector<std::uint64_t>& words, std::size_t r) {
  words[r >> 6] ^= std::uint64_t{1} << (r & 63);
}
inline bool get_bit(const std::vector<std::uint64_t>& words, std::size_t r) {
  return (words[r >> 6] >> (r & 63)) & 1;
}

template <class F>
void for_each_set_bit(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      f(w * 64 + static_cast<std::size_t>(b));
      bits &= bits - 1;
    }
  }
}

}  // namespace

std::size_t pair_rank(int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(j) * (j - 1) / 2 + static_cast<std::size_t>(i);
}

std::size_t triple_rank(int i, int j, int k) {
  int v[3] = {i, j, k};
  std::sort(v, v + 3);
  const auto kk = static_cast<std::size_t>(v[2]), jj = static_cast<std::size_t>(v[1]);
  return kk * (kk - 1) * (kk - 2) / 6 + jj * (jj - 1) / 2 + static_cast<std::size_t>(v[0]);
}

std::size_t num_pairs(int n) { return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2; }
std::size_t num_triples(int n) {
  return n < 3 ? 0 : static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
}

Polynomial::Polynomial(int n)
    : n_(n), cubic_(words_for(num_triples(n))), quadratic_(words_for(num_pairs(n))) {
  if (n < 0 || n > kMaxQubits) throw std::invalid_argument("Polynomial: arity out of range");
}

Polynomial Polynomial::from_terms(int n, std::span<const Triple> cubic,
                                  std::span<const Pair> quadratic, std::span<const int> linear,
                                  bool constant) {
  Polynomial p(n);
  for (const auto& t : cubic) p.toggle_cubic(t[0], t[1], t[2]);
  for (const auto& t : quadratic) p.toggle_quadratic(t[0], t[1]);
  for (int i : linear) p.toggle_linear(i);
  p.constant_ = constant;
  return p;
}

int Polynomial::check(int i) const {
  if (i < 0 || i >= n_)
    throw std::out_of_range("variable index " + std::to_string(i) + " outside arity " +
                            std::to_string(n_));
  return i;
}

void Polynomial::toggle_cubic(int i, int j, int k) {
  check(i), check(j), check(k);
  if (i == j || j == k || i == k) throw std::invalid_argument("cubic term needs distinct indices");
  flip_bit(cubic_, triple_rank(i, j, k));
}

void Polynomial::toggle_quadratic(int i, int j) {
  check(i), check(j);
  if (i == j) throw std::invalid_argument("quadratic term needs distinct indices");
  flip_bit(quadratic_, pair_rank(i, j));
}

void Polynomial::toggle_linear(int i) { linear_ ^= qubit_bit(n_, check(i)); }

void Polynomial::toggle_monomial(std::span<const int> vars) {
  int v[3];
  int s = 0;
  for (int q : vars) {
    check(q);
    if (std::find(v, v + s, q) != v + s) continue;
    if (s == 3) throw std::invalid_argument("monomial degree exceeds 3");
    v[s++] = q;
  }
  switch (s) {
    case 0: constant_ = !constant_; break;
    case 1: linear_ ^= qubit_bit(n_, v[0]); break;
    case 2: flip_bit(quadratic_, pair_rank(v[0], v[1])); break;
    default: flip_bit(cubic_, triple_rank(v[0], v[1], v[2])); break;
  }
}

bool Polynomial::cubic(int i, int j, int k) const {
  check(i), check(j), check(k);
  if (i == j || j == k || i == k) return false;
  return get_bit(cubic_, triple_rank(i, j, k));
}

bool Polynomial::quadratic(int i, int j) const {
  check(i), check(j);
  if (i == j) return false;
  return get_bit(quadratic_, pair_rank(i, j));
}

std::vector<Triple> Polynomial::cubic_terms() const {
  std::vector<Triple> out;
  const auto& table = triple_table();
  for_each_set_bit(cubic_, [&](std::size_t r) { out.push_back(table[r]); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pair> Polynomial::quadratic_terms() const {
  std::vector<Pair> out;
  const auto& table = pair_table();
  for_each_set_bit(quadratic_, [&](std::size_t r) { out.push_back(table[r]); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Polynomial::linear_terms() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (linear_ & qubit_bit(n_, q)) out.push_back(q);
  return out;
}

std::size_t Polynomial::num_terms() const {
  std::size_t total = static_cast<std::size_t>(std::popcount(linear_)) + (constant_ ? 1 : 0);
  for (auto w : cubic_) total += static_cast<std::size_t>(std::popcount(w));
  for (auto w : quadratic_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

int Polynomial::degree() const {
  auto any = [](const std::vector<std::uint64_t>& v) {
    return std::any_of(v.begin(), v.end(), [](std::uint64_t w) { return w != 0; });
  };
  if (any(cubic_)) return 3;
  if (any(quadratic_)) return 2;
  if (linear_) return 1;
  return constant_ ? 0 : -1;
}

Polynomial Polynomial::cubic_part() const {
  Polynomial p(n_);
  p.cubic_ = cubic_;
  return p;
}

Polynomial Polynomial::quadratic_part() const {
  Polynomial p(n_);
  p.quadratic_ = quadratic_;
  return p;
}

Polynomial Polynomial::linear_part() const {
  Polynomial p(n_);
  p.linear_ = linear_;
  return p;
}

Polynomial Polynomial::without_constant() const {
  Polynomial p = *this;
  p.constant_ = false;
  return p;
}

bool Polynomial::evaluate(std::uint64_t x) const {
  int acc = (constant_ ? 1 : 0) ^ parity64(x & linear_);
  const auto& pairs = pair_table();
  for_each_set_bit(quadratic_, [&](std::size_t r) {
    const std::uint64_t m = qubit_bit(n_, pairs[r][0]) | qubit_bit(n_, pairs[r][1]);
    acc ^= static_cast<int>((x & m) == m);
  });
  const auto& triples = triple_table();
  for_each_set_bit(cubic_, [&](std::size_t r) {
    const auto& t = triples[r];
    const std::uint64_t m = qubit_bit(n_, t[0]) | qubit_bit(n_, t[1]) | qubit_bit(n_, t[2]);
    acc ^= static_cast<int>((x & m) == m);
  });
  return acc != 0;
}

void Polynomial::add_shifted_monomial(std::span<const int> vars, std::uint64_t d) {
  int v[3];
  int s = 0;
  for (int q : vars) {
    if (std::find(v, v + s, q) != v + s) continue;
    if (s == 3) throw std::invalid_argument("monomial degree exceeds 3");
    v[s++] = check(q);
  }
  // prod_q (x_q + d_q) = sum over kept subsets T of prod_{q in T} x_q * prod_{q not in T} d_q.
  for (int keep = 0; keep < (1 << s); ++keep) {
    bool coeff = true;
    int sub[3];
    int t = 0;
    for (int b = 0; b < s; ++b) {
      if (keep & (1 << b)) sub[t++] = v[b];
      else coeff = coeff && (d & qubit_bit(n_, v[b])) != 0;
    }
    if (coeff) toggle_monomial(std::span<const int>(sub, static_cast<std::size_t>(t)));
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw std::invalid_argument("Polynomial: arity mismatch in addition");
  for (std::size_t w = 0; w < cubic_.size(); ++w) cubic_[w] ^= o.cubic_[w];
  for (std::size_t w = 0; w < quadratic_.size(); ++w) quadratic_[w] ^= o.quadratic_[w];
  linear_ ^= o.linear_;
  constant_ = constant_ != o.constant_;
  return *this;
}

CubicPolynomial::CubicPolynomial(Polynomial p) : p_(std::move(p)) {
  if (p_.constant()) throw std::invalid_argument("CubicPolynomial: constant term not allowed");
}

double Distribution::total() const {
  double t = 0;
  for (double w : weights) t += w;
  return t;
}

void Distribution::validate(double tol) const {
  if (weights.size() != (std::size_t{1} << n)) throw std::invalid_argument("Distribution: size");
  for (double w : weights)
    if (!(w >= 0)) throw std::invalid_argument("Distribution: negative weight");
  if (std::abs(total() - 1.0) > tol) throw std::invalid_argument("Distribution: not normalized");
}

bool evaluate(const Polynomial& p, const BitString& x) {
  if (x.n != p.num_qubits()) throw std::invalid_argument("evaluate: arity mismatch");
  return p.evaluate(x.bits);
}

Polynomial shift(const Polynomial& p, std::uint64_t d) {
  const int n = p.num_qubits();
  Polynomial out(n);
  if (p.constant()) out.toggle_constant();
  for (const auto& t : p.cubic_terms()) out.add_shifted_monomial(t, d);
  for (const auto& t : p.quadratic_terms()) out.add_shifted_monomial(t, d);
  for (int q : p.linear_terms()) out.add_shifted_monomial(std::span<const int>(&q, 1), d);
  return out;
}

Polynomial shift(const Polynomial& p, const BitString& d) {
  if (d.n != p.num_qubits()) throw std::invalid_argument("shift: arity mismatch");
  return shift(p, d.bits);
}

Polynomial partial_derivative(const Polynomial& p, int i) {
  if (i < 0 || i >= p.num_qubits()) throw std::out_of_range("partial_derivative: index");
  return shift(p, qubit_bit(p.num_qubits(), i)) + p;
}

std::vector<std::uint64_t> truth_table(const Polynomial& p) {
  const int n = p.num_qubits();
  std::vector<std::uint64_t> table(n <= 6 ? 1 : std::size_t{1} << (n - 6), 0);
  auto set = [&](std::uint64_t idx) { table[idx >> 6] ^= std::uint64_t{1} << (idx & 63); };
  if (p.constant()) set(0);
  for (int q : p.linear_terms()) set(qubit_bit(n, q));
  for (const auto& t : p.quadratic_terms()) set(qubit_bit(n, t[0]) | qubit_bit(n, t[1]));
  for (const auto& t : p.cubic_terms())
    set(qubit_bit(n, t[0]) | qubit_bit(n, t[1]) | qubit_bit(n, t[2]));
  kernels::omp::moebius(table, n);
  return table;
}

std::int64_t gap_count(const Polynomial& p) {
  const int n = p.num_qubits();
  require_cap(n, kBruteForceCap, "ngap");
  const auto table = truth_table(p);
  const std::int64_t ones = kernels::omp::count_ones(table, n);
  return (std::int64_t{1} << n) - 2 * ones;
}

double ngap(const Polynomial& p) {
  return std::ldexp(static_cast<double>(gap_count(p)), -p.num_qubits());
}

std::vector<std::int64_t> walsh_spectrum(const Polynomial& f) {
  const int n = f.num_qubits();
  require_cap(n, kDistributionCap, "distribution");
  const auto table = truth_table(f);
  std::vector<std::int64_t> w(std::size_t{1} << n);
  kernels::omp::signs_from_table(table, w);
  kernels::omp::fwht(w);
  return w;
}

Distribution distribution(const Polynomial& f) {
  const int n = f.num_qubits();
  const auto w = walsh_spectrum(f);
  Distribution d{n, std::vector<double>(w.size())};
  for (std::size_t s = 0; s < w.size(); ++s) {
    const double v = static_cast<double>(w[s]);
    d.weights[s] = std::ldexp(v * v, -2 * n);
  }
  return d;
}

CubicPolynomial random_cubic(int n, PolyParts parts, Rng& rng) {
  Polynomial p(n);
  CoinFlipper coin(rng);
  const auto& triples = triple_table();
  const auto& pairs = pair_table();
  if (parts.cubic)
    for (std::size_t r = 0; r < num_triples(n); ++r)
      if (coin.next()) p.toggle_cubic(triples[r][0], triples[r][1], triples[r][2]);
  if (parts.quadratic)
    for (std::size_t r = 0; r < num_pairs(n); ++r)
      if (coin.next()) p.toggle_quadratic(pairs[r][0], pairs[r][1]);
  if (parts.linear)
    for (int q = 0; q < n; ++q)
      if (coin.next()) p.toggle_linear(q);
  return CubicPolynomial(std::move(p));
}

}  // namespace iqpsim
