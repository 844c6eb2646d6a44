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

#include "iqpsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace iqpsim {
namespace {

class ScheduleBuilder {
 public:
  ScheduleBuilder(const CubicPolynomial& a, bool rotate) : rotate_(rotate) {
    s_.n = a.num_qubits();
    s_.a = a;
    s_.rotation_enabled = rotate;
    s_.adjacency_counts.assign(static_cast<std::size_t>(s_.n), std::vector<int>(static_cast<std::size_t>(s_.n), 0));
    occ_.resize(static_cast<std::size_t>(s_.n));
    std::iota(occ_.begin(), occ_.end(), 0);
  }

  void wire(int lane) { emit(GadgetKind::Wire, {lane}); }

  void swap(int lane) {
    emit(GadgetKind::Swap, {lane, lane + 1});
    std::swap(at(lane), at(lane + 1));
  }

  // Moves the occupant of lane `from` to lane `to` with adjacent swaps.
  void move(int from, int to) {
    for (; from < to; ++from) swap(from);
    for (; from > to; --from) swap(from - 1);
  }

  // Odd-even transposition sort of lanes [lo, hi].
  void sort_lanes(int lo, int hi) {
    for (int pass = 0; !std::is_sorted(occ_.begin() + lo, occ_.begin() + hi + 1); ++pass)
      for (int p = lo + (pass & 1); p + 1 <= hi; p += 2)
        if (at(p) > at(p + 1)) swap(p);
  }

  // CCZ on the region at lanes (L, L+1, L+2), which hold (i, j, k) ascending.
  void triple(int lane) {
    const int i = at(lane), j = at(lane + 1), k = at(lane + 2);
    s_.triple_order.push_back({i, j, k});
    // Cyclic orders (i,j,k), (j,k,i), (k,i,j) and the swaps reaching them.
    const std::array<std::array<int, 3>, 3> orders = {{{i, j, k}, {j, k, i}, {k, i, j}}};
    const std::array<std::vector<int>, 3> moves = {{{}, {lane, lane + 1}, {lane + 1, lane}}};
    std::size_t r = 0;
    if (rotate_) {
      int best = -1;
      for (std::size_t c = 0; c < 3; ++c) {
        const auto& o = orders[c];
        const int cost = adj(o[0], o[1]) + adj(o[1], o[2]);
        if (best < 0 || cost < best) {
          best = cost;
          r = c;
        }
      }
    }
    for (int p : moves[r]) swap(p);
    const bool y = s_.a.poly().cubic(i, j, k);
    emit(GadgetKind::Ccz, {lane, lane + 1, lane + 2}, y ? CczBasis::Y : CczBasis::Z);
    ++adj(at(lane), at(lane + 1));
    ++adj(at(lane + 1), at(lane + 2));
    for (int q = lane; q < lane + 3; ++q) wire(q);
    for (auto it = moves[r].rbegin(); it != moves[r].rend(); ++it) swap(*it);
  }

  Schedule finish() {
    for (int q = 0; q < s_.n; ++q)
      if (at(q) != q) throw std::logic_error("build_schedule: lanes not restored");
    return std::move(s_);
  }

 private:
  int& at(int lane) { return occ_.at(static_cast<std::size_t>(lane)); }
  int& adj(int p, int q) {
    if (p > q) std::swap(p, q);
    return s_.adjacency_counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  }

  void emit(GadgetKind kind, std::vector<int> lanes, std::optional<CczBasis> basis = std::nullopt) {
    GadgetInstance g;
    g.kind = kind;
    g.lanes = std::move(lanes);
    for (int l : g.lanes) g.sites.push_back(at(l));
    g.basis = basis;
    g.outcome_offset = s_.m;
    s_.m += static_cast<std::size_t>(outcome_bits(kind));
    s_.steps.push_back(std::move(g));
  }

  bool rotate_;
  Schedule s_;
  std::vector<int> occ_;
};

template <std::size_t K>
std::array<bool, K> bits_at(const Outcomes& t, std::size_t off) {
  std::array<bool, K> out{};
  for (std::size_t k = 0; k < K; ++k) out[k] = t[off + k];
  return out;
}

void check_outcomes(const Schedule& s, const Outcomes& t) {
  if (t.m != s.m) throw std::invalid_argument("outcome bit count does not match the schedule");
}

// Running operator X^x U_q; see fold_byproducts.
struct Fold {
  int n;
  std::uint64_t x = 0;
  Polynomial q;

  explicit Fold(int n_) : n(n_), q(n_) {}

  void z(int site) {
    const int v[1] = {site};
    q.add_shifted_monomial(v, x);
  }
  void pauli(int site, bool xb, bool zb) {
    if (zb) z(site);
    if (xb) x ^= qubit_bit(n, site);
  }
  void diag(std::span<const int> vars) { q.add_shifted_monomial(vars, x); }
};

void apply_flips(BitString& s, const std::vector<std::size_t>& flips) {
  for (std::size_t i : flips) s.flip(static_cast<int>(i));
}

void trajectory_noise(DenseState& psi, const NoiseModel& noise, Rng& rng) {
  if (!noise.acts_on_state()) return;
  const int n = psi.n;
  std::uint64_t xm = 0, zm = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = qubit_bit(n, q);
    if (noise.depolarizing > 0 && uniform01(rng) < noise.depolarizing) {
      switch (uniform_below(rng, 4)) {
        case 1: xm ^= bit; break;
        case 2: xm ^= bit; zm ^= bit; break;
        case 3: zm ^= bit; break;
        default: break;
      }
    }
    if (noise.dephasing > 0 && uniform01(rng) < noise.dephasing) zm ^= bit;
  }
  if (xm || zm) psi = apply_pauli(std::move(psi), BitString(n, xm), BitString(n, zm));
}

}  // namespace

std::size_t Schedule::count(GadgetKind kind) const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [&](const GadgetInstance& g) { return g.kind == kind; }));
}

Schedule build_schedule(const CubicPolynomial& a, ScheduleOptions options) {
  const int n = a.num_qubits();
  if (n < 3) throw std::invalid_argument("build_schedule: n must be at least 3");
  if (a.poly().degree() >= 0 && (!a.poly().quadratic_part().is_zero() || !a.poly().linear_part().is_zero() || a.poly().constant()))
    throw std::invalid_argument("build_schedule: a must be homogeneous cubic");

  ScheduleBuilder sb(a, options.rotate_triples);
  for (int q = 0; q < n; ++q) sb.wire(q);
  for (int i = 0; i + 2 < n; ++i) {
    // Lanes i..n-1 hold qubits i..n-1 in order.
    for (int j = i + 1; j + 1 < n; ++j) {
      if (j > i + 1) {
        // Park the previous j behind the active tail j..n-1.
        sb.move(i + 1, i + 1 + (n - j));
      }
      // Loop I: lanes i+2 .. i+1+r hold k = j+1..n-1; a reversal stack brings
      // each k to lane i+2 in ascending order.
      const int base = i + 2;
      const int r = n - 1 - j;
      for (int c = 0; c < r; ++c) {
        sb.move(base + c, base);
        sb.triple(i);
      }
      sb.sort_lanes(base, base + r - 1);
    }
    sb.sort_lanes(i + 1, n - 1);
  }
  for (int q = 0; q < n; ++q) sb.wire(q);
  return sb.finish();
}

Outcomes Outcomes::random(std::size_t m, Rng& rng) {
  Outcomes t(m);
  for (auto& w : t.words) w = rng();
  if (m & 63) t.words.back() &= (std::uint64_t{1} << (m & 63)) - 1;
  return t;
}

std::size_t Outcomes::weight() const {
  std::size_t w = 0;
  for (auto x : words) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

Byproducts fold_byproducts(const Schedule& s, const Outcomes& t) {
  check_outcomes(s, t);
  // Invariant: gadgets so far implement X^x U_q. A later diagonal U_d gives
  // U_d X^x U_q = X^x U_{shift(d, x)} U_q. At the end X^x meets |+>^n.
  Fold fold(s.n);
  for (const auto& g : s.steps) {
    const std::size_t o = g.outcome_offset;
    switch (g.kind) {
      case GadgetKind::Wire:
        fold.pauli(g.sites[0], t[o + 1], t[o]);
        break;
      case GadgetKind::Swap: {
        const auto p = swap_frame_bits(bits_at<6>(t, o));
        fold.pauli(g.sites[0], p[0], p[1]);
        fold.pauli(g.sites[1], p[2], p[3]);
        break;
      }
      case GadgetKind::Ccz: {
        const int A = g.sites[0], C = g.sites[1], B = g.sites[2];
        if (g.basis == CczBasis::Y) {
          const int v[3] = {A, B, C};
          fold.diag(v);
        }
        if (t[o] != t[o + 2]) {
          const int v[2] = {A, C};
          fold.diag(v);
        }
        if (t[o + 1] != t[o + 2]) {
          const int v[2] = {B, C};
          fold.diag(v);
        }
        break;
      }
    }
  }
  Polynomial f = shift(fold.q, fold.x);
  return {f.quadratic_part(), f.linear_part()};
}

Byproducts fold_byproducts_reference(const Schedule& s, const Outcomes& t) {
  check_outcomes(s, t);
  const int n = s.n;
  // Operator so far: U_q U_L X^x with frame (x, q) and logical gates L.
  ByproductFrame frame = ByproductFrame::identity(n);
  Polynomial logical(n);
  auto absorb = [&](const ByproductFrame& e) {
    const auto moved = push_frame(ByproductFrame{e.x_mask, Polynomial(n)}, logical);
    frame = frame_compose(frame, e);
    frame.correction += moved.frame_out.correction;
  };
  for (const auto& g : s.steps) {
    const std::size_t o = g.outcome_offset;
    switch (g.kind) {
      case GadgetKind::Wire:
        absorb(wire_semantics(n, g.sites[0], t[o], t[o + 1]));
        break;
      case GadgetKind::Swap:
        absorb(swap_semantics(n, g.sites[0], g.sites[1], bits_at<6>(t, o)));
        break;
      case GadgetKind::Ccz: {
        const auto e = ccz_semantics(n, g.sites[0], g.sites[2], g.sites[1], *g.basis, bits_at<3>(t, o));
        if (e.apply_ccz) logical.toggle_cubic(g.sites[0], g.sites[1], g.sites[2]);
        absorb(e.frame);
        break;
      }
    }
  }
  if (!(logical == s.a.poly())) throw std::logic_error("fold_byproducts_reference: logical gates differ from a");
  return {frame.correction.quadratic_part(), frame.correction.linear_part()};
}

DenseState simulate_lanes(const Schedule& s, const Outcomes& t) {
  check_outcomes(s, t);
  const int n = s.n;
  require_cap(n, kPureStateCap, "simulate_lanes");
  DenseState psi = DenseState::plus(n);
  auto pauli = [&](int lane, bool xb, bool zb) {
    const auto e = BitString::unit(n, lane), none = BitString::zeros(n);
    if (zb) psi = apply_pauli(std::move(psi), none, e);
    if (xb) psi = apply_pauli(std::move(psi), e, none);
  };
  auto cz = [&](int p, int q) {
    Polynomial d(n);
    d.toggle_quadratic(std::min(p, q), std::max(p, q));
    psi = apply_diagonal(std::move(psi), d);
  };
  for (const auto& g : s.steps) {
    const std::size_t o = g.outcome_offset;
    const auto& L = g.lanes;
    switch (g.kind) {
      case GadgetKind::Wire:
        pauli(L[0], t[o + 1], t[o]);
        break;
      case GadgetKind::Swap: {
        apply_swap(psi, L[0], L[1]);
        const auto p = swap_frame_bits(bits_at<6>(t, o));
        pauli(L[1], p[0], p[1]);  // sites[0] moved right
        pauli(L[0], p[2], p[3]);
        break;
      }
      case GadgetKind::Ccz: {
        if (g.basis == CczBasis::Y) {
          Polynomial d(n);
          d.toggle_cubic(L[0], L[1], L[2]);
          psi = apply_diagonal(std::move(psi), d);
        }
        if (t[o] != t[o + 2]) cz(L[0], L[1]);
        if (t[o + 1] != t[o + 2]) cz(L[2], L[1]);
        break;
      }
    }
  }
  return psi;
}

std::vector<std::size_t> draw_flips(std::size_t len, const NoiseModel& noise, Rng& rng) {
  std::vector<std::size_t> out;
  if (noise.meas_flip <= 0 || len == 0) return out;
  const std::size_t block = static_cast<std::size_t>(std::max(1, noise.correlation_length));
  for (std::size_t start = 0; start < len; start += block)
    if (uniform01(rng) < noise.meas_flip)
      for (std::size_t i = start; i < std::min(len, start + block); ++i) out.push_back(i);
  return out;
}

Preparation simulate_preparation(const Schedule& s, const NoiseModel& noise, Rng& rng) {
  noise.validate();
  require_cap(s.n, noise.acts_on_state() ? kDensityCap : kPureStateCap, "simulate_preparation");
  Preparation p;
  p.t_true = Outcomes::random(s.m, rng);
  p.t_recorded = p.t_true;
  for (std::size_t i : draw_flips(s.m, noise, rng)) p.t_recorded.flip(i);
  const auto truth = fold_byproducts(s, p.t_true);
  p.recorded = p.t_recorded == p.t_true ? truth : fold_byproducts(s, p.t_recorded);
  p.f_true = CubicPolynomial(s.a.poly() + truth.b + truth.c);
  auto psi = state_from_polynomial(p.f_true);
  if (noise.acts_on_state())
    p.state = apply_noise(psi, noise);
  else
    p.state = std::move(psi);
  return p;
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Sample: return "sample";
    case Mode::Verify: return "verify";
    case Mode::Alternate: return "alternate";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "sample") return Mode::Sample;
  if (s == "verify") return Mode::Verify;
  if (s == "alternate") return Mode::Alternate;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

CubicPolynomial Transcript::f() const { return CubicPolynomial(a.poly() + b + c); }

Transcript run_shot(const Schedule& s, const RunOptions& opt, std::size_t index) {
  Transcript tr;
  tr.seed = shot_seed(opt.seed, index);
  Rng rng(tr.seed);
  tr.mode = opt.mode;
  if (tr.mode == Mode::Alternate) tr.mode = (rng() >> 63) ? Mode::Verify : Mode::Sample;
  tr.a = s.a;

  Outcomes t = Outcomes::random(s.m, rng);
  const auto flips = draw_flips(s.m, opt.noise, rng);
  const auto truth = fold_byproducts(s, t);
  if (flips.empty()) {
    tr.b = truth.b;
    tr.c = truth.c;
  } else {
    for (std::size_t i : flips) t.flip(i);
    auto rec = fold_byproducts(s, t);
    tr.b = std::move(rec.b);
    tr.c = std::move(rec.c);
  }
  tr.t = std::move(t);

  DenseState psi = state_from_polynomial(s.a.poly() + truth.b + truth.c);
  trajectory_noise(psi, opt.noise, rng);
  if (tr.mode == Mode::Sample) {
    BitString out = measure_all_X(psi, rng);
    apply_flips(out, draw_flips(static_cast<std::size_t>(s.n), opt.noise, rng));
    tr.s = out;
  } else {
    const int site = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(s.n)));
    BitString out = measure_verification(psi, site, rng);
    apply_flips(out, draw_flips(static_cast<std::size_t>(s.n), opt.noise, rng));
    tr.site = site;
    tr.v = out;
  }
  return tr;
}

namespace {
void check_run(const Schedule& s, const RunOptions& opt) {
  opt.noise.validate();
  require_cap(s.n, kPureStateCap, "run");
  if (opt.workers < 0) throw std::invalid_argument("run: workers must be >= 0");
}
}  // namespace

std::vector<Transcript> run(const Schedule& s, const RunOptions& opt) {
  check_run(s, opt);
  std::vector<Transcript> out(opt.shots);
  const int threads = opt.workers > 0 ? opt.workers : omp_get_max_threads();
  const auto shots = static_cast<std::int64_t>(opt.shots);
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
  for (std::int64_t k = 0; k < shots; ++k) out[static_cast<std::size_t>(k)] = run_shot(s, opt, static_cast<std::size_t>(k));
  return out;
}

std::vector<Transcript> run_serial(const Schedule& s, const RunOptions& opt) {
  check_run(s, opt);
  std::vector<Transcript> out;
  out.reserve(opt.shots);
  for (std::size_t k = 0; k < opt.shots; ++k) out.push_back(run_shot(s, opt, k));
  return out;
}

void CoarseGrained::add(const Polynomial& b, std::uint64_t c_eff) {
  auto w = b.quadratic_words();
  ++counts_[std::vector<std::uint64_t>(w.begin(), w.end())][c_eff];
}

double CoarseGrained::probability(const Polynomial& b, std::uint64_t c_eff) const {
  auto w = b.quadratic_words();
  auto it = counts_.find(std::vector<std::uint64_t>(w.begin(), w.end()));
  if (it == counts_.end() || total_ == 0) return 0;
  auto jt = it->second.find(c_eff);
  return jt == it->second.end() ? 0 : static_cast<double>(jt->second) / static_cast<double>(total_);
}

std::vector<Polynomial> CoarseGrained::b_values() const {
  std::vector<Polynomial> out;
  for (const auto& [key, _] : counts_) {
    Polynomial b(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        const std::size_t r = pair_rank(i, j);
        if ((key[r >> 6] >> (r & 63)) & 1) b.toggle_quadratic(i, j);
      }
    out.push_back(std::move(b));
  }
  return out;
}

std::size_t CoarseGrained::count(const Polynomial& b) const {
  auto w = b.quadratic_words();
  auto it = counts_.find(std::vector<std::uint64_t>(w.begin(), w.end()));
  if (it == counts_.end()) return 0;
  std::size_t total = 0;
  for (const auto& [_, k] : it->second) total += k;
  return total;
}

Distribution CoarseGrained::slice(const Polynomial& b) const {
  require_cap(n_, kDistributionCap, "CoarseGrained::slice");
  auto w = b.quadratic_words();
  auto it = counts_.find(std::vector<std::uint64_t>(w.begin(), w.end()));
  if (it == counts_.end()) throw std::invalid_argument("CoarseGrained::slice: b never observed");
  Distribution d{n_, std::vector<double>(std::size_t{1} << n_)};
  double total = 0;
  for (const auto& [c, k] : it->second) {
    d.weights[c] += static_cast<double>(k);
    total += static_cast<double>(k);
  }
  for (auto& x : d.weights) x /= total;
  return d;
}

double CoarseGrained::l1_to_ideal(const CubicPolynomial& a) const {
  const auto nb = static_cast<int>(num_pairs(n_));
  if (nb > kByproductEnumerationCap)
    throw CapExceeded("l1_to_ideal: too many quadratic coefficients to enumerate");
  std::vector<Pair> pairs;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) pairs.push_back({i, j});
  const double pb = std::ldexp(1.0, -nb);
  double l1 = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nb); ++mask) {
    Polynomial b(n_);
    for (std::size_t r = 0; r < pairs.size(); ++r)
      if ((mask >> r) & 1) b.toggle_quadratic(pairs[r][0], pairs[r][1]);
    const auto d = distribution(a.poly() + b);
    for (std::uint64_t c = 0; c < d.weights.size(); ++c) l1 += std::abs(probability(b, c) - pb * d.weights[c]);
  }
  return l1;
}

CoarseGrained coarse_grain(const std::vector<Transcript>& ts) {
  if (ts.empty()) return CoarseGrained(0, 0);
  CoarseGrained cg(ts.front().a.num_qubits(), ts.size());
  for (const auto& tr : ts) {
    if (tr.mode != Mode::Sample || !tr.s) throw std::invalid_argument("coarse_grain: expected Sample transcripts");
    if (!(tr.a == ts.front().a)) throw std::invalid_argument("coarse_grain: transcripts mix different a");
    cg.add(tr.b, tr.c.linear_mask() ^ tr.s->bits);
  }
  return cg;
}

UniformityReport uniformity_report(const std::vector<Byproducts>& bs) {
  if (bs.size() < kMinUniformitySamples)
    throw std::invalid_argument("uniformity_report: need at least " + std::to_string(kMinUniformitySamples) + " samples");
  const int n = bs.front().b.num_qubits();
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> coeffs;  // (i, j) for b_ij, (i, -1) for c_i
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      coeffs.emplace_back(i, j);
      names.push_back("b_" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  for (int i = 0; i < n; ++i) {
    coeffs.emplace_back(i, -1);
    names.push_back("c_" + std::to_string(i + 1));
  }
  const std::size_t K = coeffs.size();
  const double N = static_cast<double>(bs.size());
  std::vector<double> ones(K, 0);
  std::vector<std::vector<double>> both(K, std::vector<double>(K, 0));
  std::vector<char> bit(K);
  for (const auto& by : bs) {
    if (by.b.num_qubits() != n) throw std::invalid_argument("uniformity_report: mixed n");
    for (std::size_t k = 0; k < K; ++k) {
      const auto [i, j] = coeffs[k];
      bit[k] = j >= 0 ? by.b.quadratic(i, j) : by.c.linear(i);
    }
    for (std::size_t k = 0; k < K; ++k) {
      if (!bit[k]) continue;
      ones[k] += 1;
      for (std::size_t l = 0; l < K; ++l)
        if (bit[l]) both[k][l] += 1;
    }
  }
  UniformityReport rep;
  rep.samples = bs.size();
  rep.all_pass = true;
  for (std::size_t k = 0; k < K; ++k) {
    CoefficientStat st;
    st.name = names[k];
    st.frequency = ones[k] / N;
    const double dev = 2 * ones[k] - N;
    st.chi2 = dev * dev / N;
    st.p_value = std::erfc(std::sqrt(st.chi2 / 2));
    st.flagged = st.p_value < kUniformityAlpha;
    rep.all_pass = rep.all_pass && !st.flagged;
    rep.coefficients.push_back(std::move(st));
  }
  rep.correlation.assign(K, std::vector<double>(K, 0));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t l = 0; l < K; ++l) {
      const double pk = ones[k] / N, pl = ones[l] / N;
      const double var = pk * (1 - pk) * pl * (1 - pl);
      if (var <= 0) continue;
      const double r = (both[k][l] / N - pk * pl) / std::sqrt(var);
      rep.correlation[k][l] = r;
      if (k != l) rep.max_abs_correlation = std::max(rep.max_abs_correlation, std::abs(r));
    }
  return rep;
}

UniformityReport uniformity_report(const std::vector<Transcript>& ts) {
  std::vector<Byproducts> bs;
  bs.reserve(ts.size());
  for (const auto& tr : ts) bs.push_back({tr.b, tr.c});
  return uniformity_report(bs);
}

}  // namespace iqpsim
