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

#include <doctest/doctest.h>

#include <vector>

#include "iqpsim/bits.hpp"
#include "iqpsim/kernels.hpp"

using namespace iqpsim;

namespace {
std::vector<std::uint64_t> random_table(int n, Rng& rng) {
  std::vector<std::uint64_t> t(((std::size_t{1} << n) + 63) / 64);
  for (auto& w : t) w = rng();
  if (n < 6) t[0] &= (std::uint64_t{1} << (std::size_t{1} << n)) - 1;
  return t;
}
}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference") {
  Rng rng(99);
  for (int n = 0; n <= 18; ++n) {
    CAPTURE(n);
    auto a = random_table(n, rng);
    auto b = a;
    kernels::serial::moebius(a, n);
    kernels::omp::moebius(b, n);
    CHECK(a == b);
    CHECK(kernels::serial::count_ones(a, n) == kernels::omp::count_ones(a, n));

    std::vector<std::int64_t> s1(std::size_t{1} << n), s2(s1.size());
    kernels::serial::signs_from_table(a, s1);
    kernels::omp::signs_from_table(a, s2);
    CHECK(s1 == s2);
    kernels::serial::fwht(s1);
    kernels::omp::fwht(s2);
    CHECK(s1 == s2);
  }
}

TEST_CASE("moebius is an involution and fwht squares to 2^n") {
  Rng rng(5);
  for (int n = 1; n <= 12; ++n) {
    auto t = random_table(n, rng);
    const auto orig = t;
    kernels::omp::moebius(t, n);
    kernels::omp::moebius(t, n);
    CHECK(t == orig);

    std::vector<std::int64_t> v(std::size_t{1} << n);
    for (auto& x : v) x = static_cast<std::int64_t>(uniform_below(rng, 2001)) - 1000;
    auto w = v;
    kernels::omp::fwht(w);
    kernels::omp::fwht(w);
    for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(w[i] == (v[i] << n));
  }
}

TEST_CASE("moebius maps monomial coefficients to truth tables") {
  // ANF of x_low (the least significant index bit) at n = 3: coefficient at index 1.
  std::vector<std::uint64_t> t = {0b10};
  kernels::serial::moebius(t, 3);
  CHECK(t[0] == 0b10101010);
  std::vector<std::uint64_t> c = {0b1};
  kernels::serial::moebius(c, 3);
  CHECK(c[0] == 0xff);
}

TEST_CASE("count_ones and signs") {
  std::vector<std::uint64_t> t = {0b1011};
  CHECK(kernels::serial::count_ones(t, 2) == 3);
  std::vector<std::int64_t> s(4);
  kernels::serial::signs_from_table(t, s);
  CHECK(s == std::vector<std::int64_t>{-1, -1, 1, -1});
}
