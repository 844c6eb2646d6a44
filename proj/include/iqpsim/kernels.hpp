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

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical
// results; the public modules call the OpenMP versions and the tests check
// them against the serial ones.

#include <cstdint>
#include <span>

namespace iqpsim::kernels {

namespace serial {

/// In-place GF(2) Moebius transform of a packed 2^n-bit table:
/// out[x] = xor_{y subset of x} in[y]. Maps ANF coefficients to a truth table.
void moebius(std::span<std::uint64_t> table, int n);

/// Number of set bits among the first 2^n positions.
std::int64_t count_ones(std::span<const std::uint64_t> table, int n);

/// In-place unnormalized Walsh-Hadamard transform, size must be 2^n.
void fwht(std::span<std::int64_t> v);

/// Expands a packed truth table into +-1 values.
void signs_from_table(std::span<const std::uint64_t> table, std::span<std::int64_t> out);

}  // namespace serial

namespace omp {

void moebius(std::span<std::uint64_t> table, int n);
std::int64_t count_ones(std::span<const std::uint64_t> table, int n);
void fwht(std::span<std::int64_t> v);
void signs_from_table(std::span<const std::uint64_t> table, std::span<std::int64_t> out);

}  // namespace omp

}  // namespace iqpsim::kernels
