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

// Serial against OpenMP kernels. Args are n (qubits).

#include <benchmark/benchmark.h>

#include <vector>

#include "iqpsim/gf2poly.hpp"
#include "iqpsim/kernels.hpp"

namespace {

using namespace iqpsim;

std::vector<std::uint64_t> random_table(int n) {
  Rng rng(static_cast<std::uint64_t>(n));
  std::vector<std::uint64_t> t(n >= 6 ? std::size_t{1} << (n - 6) : 1);
  for (auto& w : t) w = rng();
  if (n < 6) t[0] &= (std::uint64_t{1} << (1u << n)) - 1;
  return t;
}

template <void (*Kernel)(std::span<std::uint64_t>, int)>
void BM_moebius(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto t = random_table(n);
  for (auto _ : state) {
    Kernel(t, n);
    benchmark::DoNotOptimize(t.data());
  }
}

template <std::int64_t (*Kernel)(std::span<const std::uint64_t>, int)>
void BM_count_ones(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = random_table(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(t, n));
}

template <void (*Kernel)(std::span<std::int64_t>)>
void BM_fwht(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::int64_t> v(std::size_t{1} << n, 1);
  for (auto _ : state) {
    Kernel(v);
    benchmark::DoNotOptimize(v.data());
  }
}

void BM_distribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const auto f = random_cubic(n, {true, true, true}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(distribution(f).weights.data());
}

}  // namespace

BENCHMARK(BM_moebius<kernels::serial::moebius>)->DenseRange(12, 24, 4);
BENCHMARK(BM_moebius<kernels::omp::moebius>)->DenseRange(12, 24, 4);
BENCHMARK(BM_count_ones<kernels::serial::count_ones>)->DenseRange(12, 24, 4);
BENCHMARK(BM_count_ones<kernels::omp::count_ones>)->DenseRange(12, 24, 4);
BENCHMARK(BM_fwht<kernels::serial::fwht>)->DenseRange(12, 20, 4);
BENCHMARK(BM_fwht<kernels::omp::fwht>)->DenseRange(12, 20, 4);
BENCHMARK(BM_distribution)->DenseRange(12, 20, 4);

BENCHMARK_MAIN();
