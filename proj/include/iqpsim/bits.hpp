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

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iqpsim {

/// Largest arity any polynomial or bit string may have.
inline constexpr int kMaxQubits = 32;

/// Raised when a request would exceed a configured memory/time cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Index convention: qubit q (0-based) lives at bit (n - 1 - q), so qubit 1
// in 1-based notation is the most significant bit of an amplitude index and
// the leftmost character of a printed bit string.
constexpr std::uint64_t qubit_bit(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

inline int parity64(std::uint64_t w) { return std::popcount(w) & 1; }

/// Fixed-length bit vector over qubits 0..n-1 (see qubit_bit for layout).
struct BitString {
  int n = 0;
  std::uint64_t bits = 0;

  BitString() = default;
  BitString(int n_, std::uint64_t bits_) : n(n_), bits(bits_ & low_mask(n_)) {
    if (n_ < 0 || n_ > kMaxQubits) throw std::invalid_argument("BitString: bad length");
  }

  static BitString zeros(int n_) { return {n_, 0}; }
  static BitString unit(int n_, int q) { return {n_, qubit_bit(n_, q)}; }

  /// Parses "0101" with qubit 1 leftmost.
  static BitString parse(std::string_view s) {
    if (s.size() > static_cast<std::size_t>(kMaxQubits))
      throw std::invalid_argument("BitString: too long");
    std::uint64_t b = 0;
    for (char ch : s) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("BitString: expected 0/1");
      b = (b << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return {static_cast<int>(s.size()), b};
  }

  bool operator[](int q) const { return (bits & qubit_bit(n, q)) != 0; }
  void set(int q, bool v) {
    if (v) bits |= qubit_bit(n, q); else bits &= ~qubit_bit(n, q);
  }
  void flip(int q) { bits ^= qubit_bit(n, q); }
  int weight() const { return std::popcount(bits); }

  std::string str() const {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q)
      if ((*this)[q]) out[static_cast<std::size_t>(q)] = '1';
    return out;
  }

  friend BitString operator^(BitString a, const BitString& b) {
    if (a.n != b.n) throw std::invalid_argument("BitString: length mismatch");
    a.bits ^= b.bits;
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;
};

using Rng = std::mt19937_64;

/// Buffers engine output so fair coins cost one bit each.
class CoinFlipper {
 public:
  explicit CoinFlipper(Rng& rng) : rng_(rng) {}
  bool next() {
    if (left_ == 0) {
      buf_ = rng_();
      left_ = 64;
    }
    bool b = buf_ & 1;
    buf_ >>= 1;
    --left_;
    return b;
  }

 private:
  Rng& rng_;
  std::uint64_t buf_ = 0;
  int left_ = 0;
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection; platform independent.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do r = rng(); while (r >= limit);
  return r % bound;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-shot stream seed: splitmix64(master ^ splitmix64(index)).
/// Streams depend only on (master, index), never on the worker count.
inline std::uint64_t shot_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

// Resource caps. IQPSIM_MAX_N, when set, overrides every dense cap.
inline constexpr int kBruteForceCap = 24;
inline constexpr int kDistributionCap = 20;
inline constexpr int kPureStateCap = 20;
inline constexpr int kDensityCap = 10;
// Quadratic coefficients enumerated exhaustively (n <= 7).
inline constexpr int kByproductEnumerationCap = 21;

inline int effective_cap(int default_cap) {
  if (const char* env = std::getenv("IQPSIM_MAX_N")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0 && v <= kMaxQubits) return static_cast<int>(v);
  }
  return default_cap;
}

inline void require_cap(int n, int default_cap, const char* what) {
  const int cap = effective_cap(default_cap);
  if (n > cap)
    throw CapExceeded(std::string(what) + ": n=" + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
}

}  // namespace iqpsim
