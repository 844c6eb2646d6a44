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

// Outcome-level semantics of the three measurement gadgets and the algebra of
// byproduct frames.
//
// A ByproductFrame (x, q) stands for the operator U_q X^x: the X part acts
// first, so it sits next to the circuit input where it is absorbed by |+>^n.
// Constant terms of q are global phases; they are kept by the algebra and
// ignored by every comparison that matters for measurement statistics.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iqpsim/bits.hpp"
#include "iqpsim/gf2poly.hpp"

namespace iqpsim {

enum class GadgetKind { Wire, Swap, Ccz };
enum class CczBasis { Y, Z };

/// Outcome bits consumed by one gadget: 2, 6 and 3.
int outcome_bits(GadgetKind kind);
const char* to_string(GadgetKind kind);

struct GadgetInstance {
  GadgetKind kind = GadgetKind::Wire;
  /// Line positions touched, left to right.
  std::vector<int> lanes;
  /// Logical qubits on those lanes when the gadget starts.
  std::vector<int> sites;
  /// Set iff kind == Ccz.
  std::optional<CczBasis> basis;
  std::size_t outcome_offset = 0;
};

struct ByproductFrame {
  BitString x_mask;
  Polynomial correction;

  static ByproductFrame identity(int n) { return {BitString::zeros(n), Polynomial(n)}; }
  int num_qubits() const { return x_mask.n; }
  /// Equal X masks and corrections that differ at most in the constant.
  bool same_up_to_phase(const ByproductFrame& o) const;
  friend bool operator==(const ByproductFrame&, const ByproductFrame&) = default;
};

/// Wire of length two on `site`: identity with byproduct X^{t2} Z^{t1}.
ByproductFrame wire_semantics(int n, int site, bool t1, bool t2);
inline ByproductFrame wire_semantics(bool t1, bool t2) { return wire_semantics(1, 0, t1, t2); }

/// Pauli bits (x1, z1, x2, z2) = (t1^t2, t3, t4^t5, t6).
std::array<bool, 4> swap_frame_bits(const std::array<bool, 6>& t);

/// SWAP gadget. sites[0]/sites[1] are the qubits on the left/right lane before
/// the swap; (x1, z1) acts on sites[0] and (x2, z2) on sites[1].
ByproductFrame swap_semantics(int n, int site0, int site1, const std::array<bool, 6>& t);

struct CczEffect {
  bool apply_ccz = false;
  ByproductFrame frame;
};

/// CCZ gadget with sites A, B and the centre C. Y control measurements apply
/// CCZ_ABC; either basis leaves CZ_AC^p CZ_BC^q with (p, q) = (t1^t3, t2^t3).
CczEffect ccz_semantics(int n, int a, int b, int c, CczBasis basis, const std::array<bool, 3>& t);

struct PushResult {
  /// g' = shift(g, x): X^x U_g = U_{g'} X^x.
  Polynomial gate_out;
  /// Input frame with correction += g' - g.
  ByproductFrame frame_out;
};

/// Moves the frame's X mask through the diagonal gate U_g. Throws
/// std::logic_error if the correction would leave degree <= 2.
PushResult push_frame(const ByproductFrame& frame, const Polynomial& gate);

/// Frame of `second` applied after `first`, in canonical order.
ByproductFrame frame_compose(const ByproductFrame& first, const ByproductFrame& second);

struct WireBranch {
  bool t1 = false;
  bool t2 = false;
  double probability = 0;  // for a normalized input
  double residual = 0;     // max |out - (1/2) X^t2 Z^t1 in| over test inputs
  bool ok = false;
  std::string failure;
};

struct WireOracleReport {
  std::vector<WireBranch> branches;
  /// || sum_t K_t^dag K_t - I ||_max over the four branch maps.
  double completeness_residual = 0;
  bool ok = false;
};

/// Contracts the three-site cluster chain for every outcome and checks it
/// against wire_semantics.
WireOracleReport wire_dense_oracle(double tol = 1e-12);

/// Normative outcome tables for every gadget kind, for external audit.
nlohmann::json gadget_reference_table();

}  // namespace iqpsim
