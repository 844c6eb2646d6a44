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

#include "iqpsim/io.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <openssl/evp.h>

#ifndef IQPSIM_BUILD_ID
#define IQPSIM_BUILD_ID "unknown"
#endif

namespace iqpsim::io {
namespace {

using nlohmann::json;

template <std::size_t K>
std::vector<std::array<int, K>> read_tuples(const json& j, int n, const char* what) {
  std::vector<std::array<int, K>> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw std::invalid_argument(std::string("polynomial: ") + what + " must be an array");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != K)
      throw std::invalid_argument(std::string("polynomial: ") + what + " entries need " + std::to_string(K) + " indices");
    std::array<int, K> t{};
    for (std::size_t k = 0; k < K; ++k) {
      const int v = e[k].get<int>();
      if (v < 1 || v > n) throw std::invalid_argument(std::string("polynomial: index outside 1..n in ") + what);
      if (k > 0 && v <= t[k - 1] + 1) throw std::invalid_argument(std::string("polynomial: ") + what + " tuple not strictly increasing");
      t[k] = v - 1;
    }
    if (!out.empty() && !(out.back() < t)) throw std::invalid_argument(std::string("polynomial: ") + what + " not sorted or duplicated");
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::string build_id() { return IQPSIM_BUILD_ID; }

json to_json(const Polynomial& p) {
  json cubic = json::array(), quad = json::array(), lin = json::array();
  for (const auto& t : p.cubic_terms()) cubic.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
  for (const auto& t : p.quadratic_terms()) quad.push_back({t[0] + 1, t[1] + 1});
  for (int i : p.linear_terms()) lin.push_back(i + 1);
  return {{"n", p.num_qubits()}, {"cubic", cubic}, {"quadratic", quad}, {"linear", lin}, {"constant", p.constant()}};
}

Polynomial polynomial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n")) throw std::invalid_argument("polynomial: expected an object with \"n\"");
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("polynomial: n outside 1..32");
  const auto cubic = read_tuples<3>(j.value("cubic", json()), n, "cubic");
  const auto quad = read_tuples<2>(j.value("quadratic", json()), n, "quadratic");
  json wrapped = json::array();
  if (j.contains("linear")) {
    if (!j.at("linear").is_array()) throw std::invalid_argument("polynomial: linear must be an array");
    for (const auto& v : j.at("linear")) wrapped.push_back(json::array({v}));
  }
  std::vector<int> lin;
  for (const auto& t : read_tuples<1>(wrapped, n, "linear")) lin.push_back(t[0]);
  return Polynomial::from_terms(n, cubic, quad, lin, j.value("constant", false));
}

CubicPolynomial cubic_from_json(const json& j) { return CubicPolynomial(polynomial_from_json(j)); }

void write_csv(std::ostream& os, const Distribution& d) {
  os << "s,probability\n";
  char buf[32];
  for (std::size_t s = 0; s < d.weights.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", d.weights[s]);
    os << BitString(d.n, s).str() << ',' << buf << '\n';
  }
}

json to_json(const DenseState& s) {
  json amps = json::array();
  for (const auto& a : s.amp) amps.push_back({a.real(), a.imag()});
  return {{"n", s.n}, {"index_convention", "qubit 1 is the most significant bit"}, {"amplitudes", amps}};
}

DenseState state_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  require_cap(n, kPureStateCap, "state_from_json");
  const auto& amps = j.at("amplitudes");
  if (amps.size() != (std::size_t{1} << n)) throw std::invalid_argument("state: expected 2^n amplitudes");
  DenseState s{n, {}};
  for (const auto& a : amps) {
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("state: amplitudes are [re, im] pairs");
    s.amp.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  return s;
}

std::string pack_outcomes(const Outcomes& t) {
  std::vector<unsigned char> bytes((t.m + 7) / 8);
  for (std::size_t i = 0; i < t.m; ++i)
    if (t[i]) bytes[i / 8] |= static_cast<unsigned char>(0x80u >> (i % 8));
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int len = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(len));
  return out;
}

Outcomes unpack_outcomes(const std::string& b64, std::size_t m) {
  const std::size_t nbytes = (m + 7) / 8;
  if (b64.size() != 4 * ((nbytes + 2) / 3)) throw std::invalid_argument("t_digest: length does not match m");
  std::vector<unsigned char> bytes(b64.size() / 4 * 3 + 1);
  if (EVP_DecodeBlock(bytes.data(), reinterpret_cast<const unsigned char*>(b64.data()), static_cast<int>(b64.size())) < 0)
    throw std::invalid_argument("t_digest: invalid base64");
  Outcomes t(m);
  for (std::size_t i = 0; i < m; ++i)
    if (bytes[i / 8] & (0x80u >> (i % 8))) t.set(i, true);
  for (std::size_t i = m; i < 8 * nbytes; ++i)
    if (bytes[i / 8] & (0x80u >> (i % 8))) throw std::invalid_argument("t_digest: nonzero padding bits");
  return t;
}

json to_json(const NoiseModel& noise) {
  return {{"meas_flip", noise.meas_flip},
          {"depolarizing", noise.depolarizing},
          {"dephasing", noise.dephasing},
          {"correlation_length", noise.correlation_length}};
}

json to_json(const Transcript& t) {
  json j = {{"seed", t.seed},
            {"mode", to_string(t.mode)},
            {"a", to_json(t.a.poly())},
            {"b", to_json(t.b)},
            {"c", to_json(t.c)},
            {"m", t.t.m},
            {"t_digest", pack_outcomes(t.t)}};
  if (t.s) j["s"] = t.s->str();
  if (t.site) j["i"] = *t.site + 1;
  if (t.v) j["v"] = t.v->str();
  return j;
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  t.seed = j.at("seed").get<std::uint64_t>();
  t.mode = parse_mode(j.at("mode").get<std::string>());
  if (t.mode == Mode::Alternate) throw std::invalid_argument("transcript: mode must be sample or verify");
  t.a = cubic_from_json(j.at("a"));
  t.b = polynomial_from_json(j.at("b"));
  t.c = polynomial_from_json(j.at("c"));
  const int n = t.a.num_qubits();
  if (t.b.num_qubits() != n || t.c.num_qubits() != n) throw std::invalid_argument("transcript: arity mismatch");
  t.t = unpack_outcomes(j.at("t_digest").get<std::string>(), j.at("m").get<std::size_t>());
  const bool has_s = j.contains("s"), has_iv = j.contains("i") || j.contains("v");
  if (has_s == has_iv) throw std::invalid_argument("transcript: exactly one of s or (i, v) required");
  if (t.mode == Mode::Sample) {
    if (!has_s) throw std::invalid_argument("transcript: sample record without s");
    t.s = BitString::parse(j.at("s").get<std::string>());
    if (t.s->n != n) throw std::invalid_argument("transcript: s has wrong length");
  } else {
    if (!has_iv) throw std::invalid_argument("transcript: verify record without (i, v)");
    const int i = j.at("i").get<int>();
    if (i < 1 || i > n) throw std::invalid_argument("transcript: i outside 1..n");
    t.site = i - 1;
    t.v = BitString::parse(j.at("v").get<std::string>());
    if (t.v->n != n) throw std::invalid_argument("transcript: v has wrong length");
  }
  return t;
}

json to_json(const Schedule& s) {
  std::size_t counts[3] = {s.count(GadgetKind::Wire), s.count(GadgetKind::Swap), s.count(GadgetKind::Ccz)};
  json adj = json::array();
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) adj.push_back({{"pair", {i + 1, j + 1}}, {"count", s.adjacency(i, j)}});
  json order = json::array();
  for (const auto& t : s.triple_order) order.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
  return {{"n", s.n},
          {"m", s.m},
          {"rotation", s.rotation_enabled},
          {"wires", counts[0]},
          {"swaps", counts[1]},
          {"cczs", counts[2]},
          {"triple_order", order},
          {"adjacency", adj}};
}

}  // namespace iqpsim::io
