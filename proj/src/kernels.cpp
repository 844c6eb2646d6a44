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

#include "iqpsim/kernels.hpp"

#include <bit>
#include <cstddef>

namespace iqpsim::kernels {
namespace {

constexpr std::uint64_t kLowerHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

inline std::uint64_t moebius_word(std::uint64_t w, int bits) {
  for (int b = 0; b < bits; ++b) w ^= (w & kLowerHalf[b]) << (1 << b);
  return w;
}

inline std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1 << n)) - 1;
}

}  // namespace

namespace serial {

void moebius(std::span<std::uint64_t> table, int n) {
  const int inner = n < 6 ? n : 6;
  for (auto& w : table) w = moebius_word(w, inner);
  const std::size_t words = table.size();
  for (int b = 6; b < n; ++b) {
    const std::size_t stride = std::size_t{1} << (b - 6);
    for (std::size_t w = 0; w < words; ++w)
      if (w & stride) table[w] ^= table[w ^ stride];
  }
  if (n < 6) table[0] &= tail_mask(n);
}

std::int64_t count_ones(std::span<const std::uint64_t> table, int n) {
  if (n < 6) return std::popcount(table[0] & tail_mask(n));
  std::int64_t total = 0;
  for (auto w : table) total += std::popcount(w);
  return total;
}

void fwht(std::span<std::int64_t> v) {
  const std::size_t size = v.size();
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

void signs_from_table(std::span<const std::uint64_t> table, std::span<std::int64_t> out) {
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x] = ((table[x >> 6] >> (x & 63)) & 1) ? -1 : 1;
}

}  // namespace serial

namespace omp {

void moebius(std::span<std::uint64_t> table, int n) {
  const int inner = n < 6 ? n : 6;
  const auto words = static_cast<std::ptrdiff_t>(table.size());
#pragma omp parallel for schedule(static) if (words > 1024)
  for (std::ptrdiff_t w = 0; w < words; ++w) table[w] = moebius_word(table[w], inner);
  for (int b = 6; b < n; ++b) {
    const std::ptrdiff_t stride = std::ptrdiff_t{1} << (b - 6);
#pragma omp parallel for schedule(static) if (words > 1024)
    for (std::ptrdiff_t w = 0; w < words; ++w)
      if (w & stride) table[w] ^= table[w ^ stride];
  }
  if (n < 6) table[0] &= tail_mask(n);
}

std::int64_t count_ones(std::span<const std::uint64_t> table, int n) {
  if (n < 6) return std::popcount(table[0] & tail_mask(n));
  const auto words = static_cast<std::ptrdiff_t>(table.size());
  std::int64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static) if (words > 1024)
  for (std::ptrdiff_t w = 0; w < words; ++w) total += std::popcount(table[w]);
  return total;
}

void fwht(std::span<std::int64_t> v) {
  const auto size = static_cast<std::ptrdiff_t>(v.size());
  // Stages with h < block stay inside one cache-sized block.
  const std::ptrdiff_t block = size < 4096 ? size : 4096;
#pragma omp parallel for schedule(static) if (size > block)
  for (std::ptrdiff_t b = 0; b < size; b += block) serial::fwht(v.subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(block)));
  int logh = std::countr_zero(static_cast<std::size_t>(block));
  for (std::ptrdiff_t h = block; h < size; h <<= 1, ++logh) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < size / 2; ++k) {
      const std::ptrdiff_t j = ((k >> logh) << (logh + 1)) | (k & (h - 1));
      const std::int64_t a = v[j], b = v[j + h];
      v[j] = a + b;
      v[j + h] = a - b;
    }
  }
}

void signs_from_table(std::span<const std::uint64_t> table, std::span<std::int64_t> out) {
  const auto size = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (size > 4096)
  for (std::ptrdiff_t x = 0; x < size; ++x)
    out[x] = ((table[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1) ? -1 : 1;
}

}  // namespace omp
}  // namespace iqpsim::kernels
