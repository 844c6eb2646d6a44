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

#include "iqpsim/gadgets.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "iqpsim/qstate.hpp"

namespace iqpsim {
namespace {

// Operator X^x Z^z on `site` as a frame: X^x U_{z x_s} = U_{z x_s + x z} X^x.
void add_pauli(ByproductFrame& f, int site, bool x, bool z) {
  if (z) {
    f.correction.toggle_linear(site);
    if (x) f.correction.toggle_constant();
  }
  if (x) f.x_mask.flip(site);
}

void check_sites(int n, std::initializer_list<int> sites) {
  for (int s : sites)
    if (s < 0 || s >= n) throw std::out_of_range("gadget site outside 0..n-1");
  for (auto i = sites.begin(); i != sites.end(); ++i)
    for (auto j = i + 1; j != sites.end(); ++j)
      if (*i == *j) throw std::invalid_argument("gadget sites must be distinct");
}

}  // namespace

int outcome_bits(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Wire: return 2;
    case GadgetKind::Swap: return 6;
    case GadgetKind::Ccz: return 3;
  }
  return 0;
}

const char* to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Wire: return "wire";
    case GadgetKind::Swap: return "swap";
    case GadgetKind::Ccz: return "ccz";
  }
  return "?";
}

bool ByproductFrame::same_up_to_phase(const ByproductFrame& o) const {
  return x_mask == o.x_mask && correction.without_constant() == o.correction.without_constant();
}

ByproductFrame wire_semantics(int n, int site, bool t1, bool t2) {
  check_sites(n, {site});
  auto f = ByproductFrame::identity(n);
  add_pauli(f, site, t2, t1);
  return f;
}

std::array<bool, 4> swap_frame_bits(const std::array<bool, 6>& t) {
  return {t[0] != t[1], t[2], t[3] != t[4], t[5]};
}

ByproductFrame swap_semantics(int n, int site0, int site1, const std::array<bool, 6>& t) {
  check_sites(n, {site0, site1});
  const auto p = swap_frame_bits(t);
  auto f = ByproductFrame::identity(n);
  add_pauli(f, site0, p[0], p[1]);
  add_pauli(f, site1, p[2], p[3]);
  return f;
}

CczEffect ccz_semantics(int n, int a, int b, int c, CczBasis basis, const std::array<bool, 3>& t) {
  check_sites(n, {a, b, c});
  CczEffect e{basis == CczBasis::Y, ByproductFrame::identity(n)};
  if (t[0] != t[2]) e.frame.correction.toggle_quadratic(a, c);
  if (t[1] != t[2]) e.frame.correction.toggle_quadratic(b, c);
  return e;
}

PushResult push_frame(const ByproductFrame& frame, const Polynomial& gate) {
  if (gate.num_qubits() != frame.num_qubits()) throw std::invalid_argument("push_frame: arity mismatch");
  Polynomial moved = shift(gate, frame.x_mask);
  ByproductFrame out = frame;
  out.correction += moved + gate;
  if (out.correction.degree() > 2) throw std::logic_error("push_frame: correction degree exceeds 2");
  return {std::move(moved), std::move(out)};
}

ByproductFrame frame_compose(const ByproductFrame& first, const ByproductFrame& second) {
  if (first.num_qubits() != second.num_qubits())
    throw std::invalid_argument("frame_compose: arity mismatch");
  // U_d2 X^y2 U_d1 X^y1 = U_{d2 + shift(d1, y2)} X^{y1 ^ y2}.
  ByproductFrame out{first.x_mask ^ second.x_mask, second.correction + shift(first.correction, second.x_mask)};
  if (out.correction.degree() > 2) throw std::logic_error("frame_compose: correction degree exceeds 2");
  return out;
}

WireOracleReport wire_dense_oracle(double tol) {
  using C = std::complex<double>;
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<std::array<C, 2>> inputs = {
      {C(1), C(0)}, {C(0), C(1)}, {C(r), C(r)}, {C(r), C(0, r)}, {C(0.6), C(0, -0.8)}};

  // Chain: input on qubit 0, |+> on qubits 1 and 2, CZ_01 CZ_12.
  Polynomial chain(3);
  chain.toggle_quadratic(0, 1);
  chain.toggle_quadratic(1, 2);

  // Output of branch (t1, t2) on qubit 2, including the measurement scalars.
  auto contract = [&](const std::array<C, 2>& in, bool t1, bool t2) {
    DenseState s{3, std::vector<C>(8)};
    for (std::size_t x = 0; x < 8; ++x) s.amp[x] = in[x >> 2] * 0.5;
    s = apply_diagonal(std::move(s), chain);
    std::array<C, 2> out{};
    for (std::size_t x = 0; x < 8; ++x) {
      const bool a = (x >> 2) & 1, b = (x >> 1) & 1;
      const double sign = ((t1 && a) != (t2 && b)) ? -1.0 : 1.0;
      out[x & 1] += sign * r * r * s.amp[x];
    }
    return out;
  };

  WireOracleReport report;
  std::array<std::array<C, 4>, 4> gram{};  // sum over branches of K^dag K, row-major 2x2
  report.ok = true;
  int branch = 0;
  for (int t1 = 0; t1 < 2; ++t1)
    for (int t2 = 0; t2 < 2; ++t2, ++branch) {
      WireBranch wb;
      wb.t1 = t1;
      wb.t2 = t2;
      const auto frame = wire_semantics(t1, t2);
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        const auto& in = inputs[k];
        DenseState expected{1, {in[0], in[1]}};
        expected = apply_pauli(std::move(expected), frame.x_mask, BitString::zeros(1));
        expected = apply_diagonal(std::move(expected), frame.correction);
        const double phase = frame.correction.constant() ? -1.0 : 1.0;
        const auto out = contract(in, t1, t2);
        for (int z = 0; z < 2; ++z)
          wb.residual = std::max(wb.residual, std::abs(out[static_cast<std::size_t>(z)] -
                                                       0.5 * phase * expected.amp[static_cast<std::size_t>(z)]));
        if (k == 0) wb.probability = std::norm(out[0]) + std::norm(out[1]);
      }
      // Branch map columns from the basis inputs.
      const auto c0 = contract(inputs[0], t1, t2), c1 = contract(inputs[1], t1, t2);
      const std::array<std::array<C, 2>, 2> cols = {c0, c1};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          C acc = 0;
          for (int z = 0; z < 2; ++z) acc += std::conj(cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)]) *
                                             cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(z)];
          gram[0][static_cast<std::size_t>(2 * i + j)] += acc;
        }
      wb.ok = wb.residual < tol && std::abs(wb.probability - 0.25) < tol;
      if (!wb.ok)
        wb.failure = "wire branch (t1=" + std::to_string(t1) + ", t2=" + std::to_string(t2) +
                     ") residual " + std::to_string(wb.residual) + " probability " +
                     std::to_string(wb.probability);
      report.ok = report.ok && wb.ok;
      report.branches.push_back(std::move(wb));
    }
  const std::array<C, 4> id = {C(1), C(0), C(0), C(1)};
  for (int k = 0; k < 4; ++k)
    report.completeness_residual =
        std::max(report.completeness_residual, std::abs(gram[0][static_cast<std::size_t>(k)] - id[static_cast<std::size_t>(k)]));
  report.ok = report.ok && report.completeness_residual < tol;
  return report;
}

nlohmann::json gadget_reference_table() {
  using nlohmann::json;
  json wires = json::array();
  for (int t1 = 0; t1 < 2; ++t1)
    for (int t2 = 0; t2 < 2; ++t2)
      wires.push_back({{"outcome", std::to_string(t1) + std::to_string(t2)},
                       {"logic", "identity"},
                       {"frame", {{"x", t2}, {"z", t1}}}});
  json swaps = json::array();
  for (int t = 0; t < 64; ++t) {
    std::array<bool, 6> bits{};
    std::string s;
    for (int k = 0; k < 6; ++k) {
      bits[static_cast<std::size_t>(k)] = (t >> (5 - k)) & 1;
      s += bits[static_cast<std::size_t>(k)] ? '1' : '0';
    }
    const auto p = swap_frame_bits(bits);
    swaps.push_back({{"outcome", s},
                     {"logic", "swap"},
                     {"frame", {{"x1", p[0]}, {"z1", p[1]}, {"x2", p[2]}, {"z2", p[3]}}}});
  }
  json cczs = json::array();
  for (const char* basis : {"Y", "Z"})
    for (int t = 0; t < 8; ++t) {
      const bool t1 = (t >> 2) & 1, t2 = (t >> 1) & 1, t3 = t & 1;
      cczs.push_back({{"basis", basis},
                      {"outcome", std::string{char('0' + t1), char('0' + t2), char('0' + t3)}},
                      {"logic", std::string(basis) == "Y" ? "ccz" : "identity"},
                      {"frame", {{"cz_ac", t1 != t3}, {"cz_bc", t2 != t3}}}});
    }
  return {{"frame_convention", "U_q X^x, X acting first; constant terms are global phases"},
          {"wire", {{"sites", 1}, {"outcome_bits", 2}, {"rows", wires}}},
          {"swap", {{"sites", 2}, {"outcome_bits", 6}, {"map", "(x1,z1,x2,z2)=(t1^t2,t3,t4^t5,t6)"}, {"rows", swaps}}},
          {"ccz", {{"sites", 3}, {"outcome_bits", 3}, {"map", "(p,q)=(t1^t3,t2^t3); CZ_AC^p CZ_BC^q"}, {"rows", cczs}}}};
}

}  // namespace iqpsim
