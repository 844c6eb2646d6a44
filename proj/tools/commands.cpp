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

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "iqpsim/certify.hpp"
#include "iqpsim/gadgets.hpp"
#include "iqpsim/io.hpp"
#include "iqpsim/protocol.hpp"

namespace iqpsim::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Separate stream for drawing a random `a`, so shot streams stay untouched.
constexpr std::uint64_t kPolySalt = 0x6a09e667f3bcc909ULL;

CubicPolynomial resolve_poly(const RunConfig& cfg) {
  if (cfg.poly == "random") {
    if (cfg.n < 3) throw ConfigError("--n must be at least 3 with --poly random");
    require_cap(cfg.n, kPureStateCap, "--n");
    Rng rng(splitmix64(cfg.seed ^ kPolySalt));
    return random_cubic(cfg.n, {true, false, false}, rng);
  }
  std::ifstream in(cfg.poly);
  if (!in) throw ConfigError("cannot open polynomial file " + cfg.poly);
  auto a = io::cubic_from_json(json::parse(in));
  if (cfg.n != 0 && cfg.n != a.num_qubits())
    throw ConfigError("--n " + std::to_string(cfg.n) + " does not match the polynomial (n=" +
                      std::to_string(a.num_qubits()) + ")");
  require_cap(a.num_qubits(), kPureStateCap, "polynomial");
  return a;
}

void validate(const RunConfig& cfg) {
  try {
    cfg.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.workers < 0) throw ConfigError("--workers must be >= 0");
}

json header(const RunConfig& cfg, const CubicPolynomial& a) {
  json rc = cfg.to_json();
  rc["a"] = io::to_json(a.poly());
  return {{"run_config", rc}, {"build", io::build_id()}};
}

fs::path out_file(const RunConfig& cfg, const char* name) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / name;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << j.dump(2) << '\n';
}

void write_transcripts(const fs::path& p, const json& head, const std::vector<Transcript>& ts) {
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << head.dump() << '\n';
  for (const auto& t : ts) os << io::to_json(t).dump() << '\n';
}

std::string pair_bits(const Polynomial& b) {
  std::string s;
  for (int i = 0; i < b.num_qubits(); ++i)
    for (int j = i + 1; j < b.num_qubits(); ++j) s += b.quadratic(i, j) ? '1' : '0';
  return s;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Accept: return kAccept;
    case Verdict::Reject: return kReject;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kConfigError;
}

int finish_decision(const RunConfig& cfg, const json& head, const Decision& d, std::ostream& log) {
  json out = head;
  out["decision"] = to_json(d);
  write_json(out_file(cfg, "decision.json"), out);
  log << "verdict " << to_string(d.verdict) << "  mean_pi " << d.mean_pi << "  threshold " << d.threshold
      << "  N " << d.N << " (required " << d.required << ")  p_fail_bound " << d.confidence_bound << '\n';
  return exit_for(d.verdict);
}

// Selftest plumbing.
struct Item {
  std::string name;
  bool ok;
  std::string detail;
};

double chi2_pvalue(const std::vector<double>& counts) {
  double total = 0;
  for (double c : counts) total += c;
  const double e = total / static_cast<double>(counts.size());
  double stat = 0;
  for (double c : counts) stat += (c - e) * (c - e) / e;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

Item gadget_uniformity(Rng& rng) {
  constexpr int kDraws = 100000;
  std::vector<double> wire(4), swap(16), ccz(4);
  CoinFlipper coin(rng);
  for (int k = 0; k < kDraws; ++k) {
    const bool t1 = coin.next(), t2 = coin.next();
    const auto w = wire_semantics(t1, t2);
    wire[static_cast<std::size_t>(2 * w.x_mask[0] + w.correction.linear(0))] += 1;
    std::array<bool, 6> t6{};
    for (auto& b : t6) b = coin.next();
    const auto s = swap_semantics(2, 0, 1, t6);
    swap[static_cast<std::size_t>(8 * s.x_mask[0] + 4 * s.correction.linear(0) + 2 * s.x_mask[1] + s.correction.linear(1))] += 1;
    const std::array<bool, 3> t3 = {coin.next(), coin.next(), coin.next()};
    const auto c = ccz_semantics(3, 0, 1, 2, CczBasis::Z, t3);
    ccz[static_cast<std::size_t>(2 * c.frame.correction.quadratic(0, 2) + c.frame.correction.quadratic(1, 2))] += 1;
  }
  const double pw = chi2_pvalue(wire), ps = chi2_pvalue(swap), pc = chi2_pvalue(ccz);
  std::ostringstream d;
  d << "p(wire)=" << pw << " p(swap)=" << ps << " p(ccz)=" << pc;
  return {"gadget frame uniformity", pw > 0.01 && ps > 0.01 && pc > 0.01, d.str()};
}

Item end_to_end(Rng& rng) {
  double worst = 0;
  std::size_t mismatches = 0;
  for (int n = 3; n <= 5; ++n)
    for (int r = 0; r < 20; ++r) {
      const auto a = random_cubic(n, {true, false, false}, rng);
      const auto s = build_schedule(a);
      const auto t = Outcomes::random(s.m, rng);
      const auto fast = fold_byproducts(s, t), ref = fold_byproducts_reference(s, t);
      if (!(fast.b == ref.b && fast.c == ref.c)) ++mismatches;
      const auto psi = simulate_lanes(s, t);
      const auto want = state_from_polynomial(a.poly() + fast.b + fast.c);
      Amplitude overlap = 0;
      for (std::size_t x = 0; x < psi.amp.size(); ++x) overlap += std::conj(want.amp[x]) * psi.amp[x];
      const Amplitude phase = overlap / std::abs(overlap);
      for (std::size_t x = 0; x < psi.amp.size(); ++x) worst = std::max(worst, std::abs(psi.amp[x] - phase * want.amp[x]));
    }
  std::ostringstream d;
  d << "max residual " << worst << ", fold mismatches " << mismatches;
  return {"ideal end-to-end n=3..5", worst < 1e-12 && mismatches == 0, d.str()};
}

Item equivalence(Rng& rng) {
  double worst = 0;
  for (int n = 2; n <= 4; ++n)
    for (int r = 0; r < 20; ++r) {
      const auto rho = random_density(n, 3, rng);
      const auto f = random_cubic(n, {true, true, true}, rng);
      const int site = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      worst = std::max(worst, equivalence_oracle(rho, f, site).discrepancy);
    }
  std::ostringstream d;
  d << "max discrepancy " << worst;
  return {"parity/stabilizer equivalence", worst < 1e-10, d.str()};
}

Item fourth_moment(Rng& rng) {
  double worst_ratio = 0;
  for (int n = 3; n <= 4; ++n)
    for (int r = 0; r < 3; ++r) {
      const auto a = random_cubic(n, {true, false, false}, rng);
      worst_ratio = std::max(worst_ratio, byproduct_fourth_moment(a) / fourth_moment_bound(n));
    }
  std::ostringstream d;
  d << "max <ngap^4> / (3 * 2^-2n) = " << worst_ratio;
  return {"fourth-moment bound", worst_ratio <= 1.0 + 1e-12, d.str()};
}

Item byproduct_uniformity(const CubicPolynomial& a, bool rotate, std::uint64_t seed, const std::string& label) {
  const auto s = build_schedule(a, {rotate});
  Rng rng(seed);
  std::vector<Byproducts> bs;
  for (int r = 0; r < 10000; ++r) bs.push_back(fold_byproducts(s, Outcomes::random(s.m, rng)));
  const auto rep = uniformity_report(bs);
  std::string flagged;
  for (const auto& c : rep.coefficients)
    if (c.flagged) flagged += (flagged.empty() ? "" : ",") + c.name;
  return {"byproduct uniformity (" + label + ")", rep.all_pass,
          flagged.empty() ? "all coefficients p > 0.01" : "flagged: " + flagged};
}

Item threshold_item() {
  const auto r = optimize_eta0(23.0 / 24.0);
  std::ostringstream d;
  d << std::setprecision(8) << "eta0 " << r.eta0 << " delta* " << r.delta_star;
  return {"threshold optimization", std::abs(r.eta0 - 0.01169) <= 1e-4 && r.eta0 > 1.0 / 86.0, d.str()};
}

}  // namespace

json RunConfig::to_json() const {
  return {{"command", command},
          {"n", n},
          {"poly", poly},
          {"shots", shots},
          {"mu", mu},
          {"noise", io::to_json(noise)},
          {"seed", seed},
          {"workers", workers},
          {"out", out_dir},
          {"epsilon0", epsilon0},
          {"rotate_triples", rotate_triples}};
}

int cmd_sample(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto a = resolve_poly(cfg);
  const int n = a.num_qubits();
  const auto sched = build_schedule(a, {cfg.rotate_triples});
  RunOptions opt{Mode::Sample, cfg.shots, cfg.seed, cfg.noise, cfg.workers};
  const auto ts = run(sched, opt);
  const json head = header(cfg, a);
  write_transcripts(out_file(cfg, "transcripts.jsonl"), head, ts);

  json summary = head;
  summary["shots"] = ts.size();
  summary["schedule"] = io::to_json(sched);
  summary["l1"] = nullptr;
  summary["slices"] = json::array();
  std::ofstream csv(out_file(cfg, "histogram.csv"));
  csv << "# " << head.dump() << '\n' << "b,c_eff,count,empirical,ideal\n";
  if (!ts.empty()) {
    const auto cg = coarse_grain(ts);
    const double nb = static_cast<double>(num_pairs(n));
    double max_slice = 0;
    for (const auto& b : cg.b_values()) {
      const auto ideal = distribution(a.poly() + b);
      const auto slice = cg.slice(b);
      const std::size_t count = cg.count(b);
      for (std::uint64_t c = 0; c < slice.weights.size(); ++c) {
        const double p = cg.probability(b, c);
        if (p == 0) continue;
        csv << pair_bits(b) << ',' << BitString(n, c).str() << ',' << std::llround(p * static_cast<double>(cg.total())) << ','
            << std::setprecision(17) << p << ',' << std::ldexp(ideal.weights[c], -static_cast<int>(nb)) << '\n';
      }
      const double l1 = l1_distance(slice, ideal);
      max_slice = std::max(max_slice, l1);
      if (summary["slices"].size() < 256) summary["slices"].push_back({{"b", pair_bits(b)}, {"count", count}, {"l1", l1}});
    }
    summary["max_slice_l1"] = max_slice;
    summary["distinct_b"] = cg.b_values().size();
    if (static_cast<int>(nb) <= kByproductEnumerationCap) summary["l1"] = cg.l1_to_ideal(a);
    summary["l1_reference_bound"] = 3.0 * std::sqrt(std::ldexp(1.0, n) / static_cast<double>(ts.size()));
  }
  write_json(out_file(cfg, "summary.json"), summary);
  log << "sample: " << ts.size() << " shots, n=" << n << ", m=" << sched.m;
  if (!summary["l1"].is_null()) log << ", coarse-grained l1 " << summary["l1"].get<double>();
  log << '\n';
  return kAccept;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (!(cfg.mu > 0)) throw ConfigError("--mu must be positive");
  const auto a = resolve_poly(cfg);
  CertificationParams params;
  params.n = a.num_qubits();
  params.mu = cfg.mu;
  const auto sched = build_schedule(a, {cfg.rotate_triples});
  RunOptions opt{Mode::Verify, params.required_samples(), cfg.seed, cfg.noise, cfg.workers};
  const auto ts = run(sched, opt);
  const json head = header(cfg, a);
  write_transcripts(out_file(cfg, "transcripts.jsonl"), head, ts);
  return finish_decision(cfg, head, certify(verification_records(ts), params), log);
}

int cmd_certify(const RunConfig& cfg, std::ostream& log) {
  if (!(cfg.mu > 0)) throw ConfigError("--mu must be positive");
  if (cfg.in_path.empty()) throw ConfigError("certify needs --in <transcripts.jsonl>");
  std::ifstream in(cfg.in_path);
  if (!in) throw ConfigError("cannot open " + cfg.in_path);
  std::vector<VerificationRecord> records;
  std::string line;
  std::optional<CubicPolynomial> a;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = json::parse(line);
    if (j.contains("run_config")) continue;
    const auto t = io::transcript_from_json(j);
    if (a && !(t.a == *a)) throw ConfigError("transcripts mix different a");
    a = t.a;
    if (t.mode == Mode::Verify) records.push_back(VerificationRecord::make(t.f(), *t.site, *t.v));
  }
  if (records.empty()) throw ConfigError("no verify records in " + cfg.in_path);
  CertificationParams params;
  params.n = a->num_qubits();
  params.mu = cfg.mu;
  return finish_decision(cfg, header(cfg, *a), certify(records, params), log);
}

int cmd_threshold(const RunConfig& cfg, std::ostream& log) {
  Eta0Result r;
  try {
    r = optimize_eta0(cfg.epsilon0);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  json out = {{"run_config", cfg.to_json()},
              {"build", io::build_id()},
              {"epsilon0", cfg.epsilon0},
              {"eta0", r.eta0},
              {"delta_star", r.delta_star},
              {"failure_bound_at_optimum", failure_bound(r.eta0, r.delta_star)},
              {"eta0_rational", 1.0 / 86.0},
              {"exceeds_rational", r.eta0 > 1.0 / 86.0}};
  log << out.dump(2) << '\n';
  return kAccept;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& log) {
  Rng rng(cfg.seed);
  std::vector<Item> items;
  {
    const auto w = wire_dense_oracle();
    std::string detail = "completeness residual " + std::to_string(w.completeness_residual);
    for (const auto& b : w.branches)
      if (!b.ok) detail += "; " + b.failure;
    items.push_back({"wire dense oracle", w.ok, detail});
  }
  items.push_back(gadget_uniformity(rng));
  items.push_back(end_to_end(rng));
  items.push_back(equivalence(rng));
  items.push_back(fourth_moment(rng));
  items.push_back(byproduct_uniformity(CubicPolynomial(4), cfg.rotate_triples, cfg.seed, "n=4, a=0"));
  {
    Rng ar(splitmix64(cfg.seed ^ kPolySalt));
    items.push_back(byproduct_uniformity(random_cubic(4, {true, false, false}, ar), cfg.rotate_triples, cfg.seed + 1,
                                         "n=4, random a"));
  }
  items.push_back(threshold_item());
  bool all = true;
  for (const auto& it : items) {
    log << (it.ok ? "PASS " : "FAIL ") << it.name << ": " << it.detail << '\n';
    all = all && it.ok;
  }
  log << (all ? "selftest passed" : "selftest FAILED") << '\n';
  return all ? 0 : 1;
}

int cmd_gadget_oracle(const RunConfig& cfg, std::ostream& log) {
  const auto w = wire_dense_oracle();
  json branches = json::array();
  for (const auto& b : w.branches) {
    branches.push_back({{"t1", b.t1}, {"t2", b.t2}, {"probability", b.probability}, {"residual", b.residual}, {"ok", b.ok}});
    log << (b.ok ? "PASS" : "FAIL") << " wire branch t=" << b.t1 << b.t2 << " probability " << b.probability
        << " residual " << b.residual << '\n';
  }
  log << "completeness residual " << w.completeness_residual << '\n';
  json out = {{"run_config", cfg.to_json()},
              {"build", io::build_id()},
              {"wire_oracle", {{"ok", w.ok}, {"completeness_residual", w.completeness_residual}, {"branches", branches}}},
              {"gadgets", gadget_reference_table()}};
  write_json(out_file(cfg, "gadget_table.json"), out);
  return w.ok ? 0 : 1;
}

int guarded(const RunConfig& cfg, std::ostream& err, int (*body)(const RunConfig&, std::ostream&), std::ostream& log) {
  try {
    return body(cfg, log);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace iqpsim::cli
