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

// File formats. Qubit indices are 1-based in every external format; bit
// strings print qubit 1 first.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "iqpsim/gf2poly.hpp"
#include "iqpsim/noise.hpp"
#include "iqpsim/protocol.hpp"
#include "iqpsim/qstate.hpp"

namespace iqpsim::io {

/// Identifier of the source tree this binary was built from.
std::string build_id();

/// {"n", "cubic": [[i,j,k]...], "quadratic": [[i,j]...], "linear": [i...], "constant"}
/// with sorted, strictly increasing 1-based tuples.
nlohmann::json to_json(const Polynomial& p);
/// Validates range, ordering and duplicates; throws std::invalid_argument.
Polynomial polynomial_from_json(const nlohmann::json& j);
CubicPolynomial cubic_from_json(const nlohmann::json& j);

/// "s,probability" rows in index order.
void write_csv(std::ostream& os, const Distribution& d);

/// Array of [re, im] pairs in amplitude-index order.
nlohmann::json to_json(const DenseState& s);
DenseState state_from_json(const nlohmann::json& j);

/// Bitpack with t_1 as the most significant bit of the first byte, base64.
std::string pack_outcomes(const Outcomes& t);
Outcomes unpack_outcomes(const std::string& b64, std::size_t m);

nlohmann::json to_json(const NoiseModel& noise);

/// One JSONL record.
nlohmann::json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Schedule& s);

}  // namespace iqpsim::io
