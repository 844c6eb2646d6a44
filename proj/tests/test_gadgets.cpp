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

#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "iqpsim/gadgets.hpp"
#include "iqpsim/qstate.hpp"
#include "oracles.hpp"

using namespace iqpsim;
using oracle::poly;

namespace {
double chi2_p(const std::vector<double>& counts) {
  double total = 0;
  for (double c : counts) total += c;
  const double e = total / static_cast<double>(counts.size());
  double stat = 0;
  for (double c : counts) stat += (c - e) * (c - e) / e;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(static_cast<double>(counts.size() - 1)), stat));
}
}  // namespace

TEST_CASE("wire outcomes") {
  CHECK(wire_semantics(false, false) == ByproductFrame::identity(1));
  const auto z = wire_semantics(true, false);
  CHECK(z.x_mask.bits == 0);
  CHECK(z.correction == poly(1, {}, {}, {1}));
  const auto x = wire_semantics(false, true);
  CHECK(x.x_mask.bits == 1);
  CHECK(x.correction.is_zero());
  CHECK_THROWS_AS(wire_semantics(2, 2, true, true), std::out_of_range);
}

TEST_CASE("wire frame is the operator X^t2 Z^t1") {
  for (int t1 = 0; t1 < 2; ++t1)
    for (int t2 = 0; t2 < 2; ++t2) {
      const Eigen::MatrixXcd want = oracle::x_op(1, static_cast<std::uint64_t>(t2)) * oracle::diag_op(poly(1, {}, {}, t1 ? std::initializer_list<int>{1} : std::initializer_list<int>{}));
      CHECK((oracle::frame_op(wire_semantics(t1, t2)) - want).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("swap outcomes") {
  CHECK(swap_semantics(2, 0, 1, {}) == ByproductFrame::identity(2));
  std::set<std::array<bool, 4>> seen;
  for (int t = 0; t < 64; ++t) {
    std::array<bool, 6> b{};
    for (int k = 0; k < 6; ++k) b[static_cast<std::size_t>(k)] = (t >> k) & 1;
    seen.insert(swap_frame_bits(b));
  }
  CHECK(seen.size() == 16);
  CHECK(swap_frame_bits({true, false, true, false, false, true}) == std::array<bool, 4>{true, true, false, true});
  CHECK_THROWS_AS(swap_semantics(3, 1, 1, {}), std::invalid_argument);
}

TEST_CASE("ccz outcomes") {
  const auto z = ccz_semantics(3, 0, 1, 2, CczBasis::Z, {});
  CHECK_FALSE(z.apply_ccz);
  CHECK(z.frame == ByproductFrame::identity(3));
  const auto y = ccz_semantics(3, 0, 1, 2, CczBasis::Y, {});
  CHECK(y.apply_ccz);
  CHECK(y.frame == ByproductFrame::identity(3));
  // (p, q) = (t1^t3, t2^t3); A=0, B=1, C=2.
  const auto e = ccz_semantics(3, 0, 1, 2, CczBasis::Z, {true, false, false});
  CHECK(e.frame.correction == poly(3, {}, {{1, 3}}));
  const auto e2 = ccz_semantics(3, 0, 1, 2, CczBasis::Y, {false, false, true});
  CHECK(e2.frame.correction == poly(3, {}, {{1, 3}, {2, 3}}));
  CHECK(e2.frame.x_mask.bits == 0);
}

TEST_CASE("gadget frames are uniform under uniform outcomes") {
  Rng rng(2718);
  CoinFlipper coin(rng);
  const int N = 100000;
  std::vector<double> w(4), s(16), c(4);
  for (int k = 0; k < N; ++k) {
    const bool t1 = coin.next(), t2 = coin.next();
    w[static_cast<std::size_t>(2 * t1 + t2)] += 1;
    std::array<bool, 6> t{};
    for (auto& b : t) b = coin.next();
    const auto f = swap_frame_bits(t);
    s[static_cast<std::size_t>(8 * f[0] + 4 * f[1] + 2 * f[2] + f[3])] += 1;
    const auto e = ccz_semantics(3, 0, 1, 2, CczBasis::Y, {coin.next(), coin.next(), coin.next()});
    c[static_cast<std::size_t>(2 * e.frame.correction.quadratic(0, 2) + e.frame.correction.quadratic(1, 2))] += 1;
  }
  for (double x : s) CHECK(std::abs(x / N - 1.0 / 16) < 0.005);
  for (double x : c) CHECK(std::abs(x / N - 0.25) < 0.005);
  CHECK(chi2_p(w) > 0.01);
  CHECK(chi2_p(s) > 0.01);
  CHECK(chi2_p(c) > 0.01);
}

TEST_CASE("push_frame examples") {
  const auto x1 = ByproductFrame{BitString::unit(3, 0), Polynomial(3)};
  auto r = push_frame(x1, poly(3, {{1, 2, 3}}));
  CHECK(r.frame_out.correction == poly(3, {}, {{2, 3}}));
  CHECK(r.gate_out == poly(3, {{1, 2, 3}}, {{2, 3}}));
  CHECK(r.frame_out.x_mask == x1.x_mask);

  r = push_frame(ByproductFrame{BitString::unit(2, 0), Polynomial(2)}, poly(2, {}, {{1, 2}}));
  CHECK(r.frame_out.correction == poly(2, {}, {}, {2}));

  r = push_frame(ByproductFrame{BitString::parse("11"), Polynomial(2)}, poly(2, {}, {{1, 2}}));
  CHECK(r.frame_out.correction == poly(2, {}, {}, {1, 2}, true));
  CHECK(r.frame_out.correction.without_constant() == poly(2, {}, {}, {1, 2}));
}

TEST_CASE("push_frame rejects a correction of degree three") {
  ByproductFrame f{BitString::zeros(3), poly(3, {}, {{1, 2}})};
  f.x_mask = BitString::unit(3, 0);
  CHECK_NOTHROW(push_frame(f, poly(3, {{1, 2, 3}})));
  ByproductFrame bad{BitString::zeros(3), poly(3, {{1, 2, 3}})};
  CHECK_THROWS_AS(push_frame(bad, Polynomial(3)), std::logic_error);
}

TEST_CASE("push_frame agrees with dense operators") {
  Rng rng(42);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 4;
    const auto g = random_cubic(n, {n >= 3, true, true}, rng);
    const BitString x(n, uniform_below(rng, std::uint64_t{1} << n));
    const auto r = push_frame(ByproductFrame{x, Polynomial(n)}, g);
    // X^x U_g == U_{g'} X^x on a random state.
    const auto psi = random_pure(n, rng);
    const Eigen::VectorXcd v = oracle::vec(psi);
    const Eigen::VectorXcd lhs = oracle::x_op(n, x.bits) * oracle::diag_op(g) * v;
    const Eigen::VectorXcd rhs = oracle::diag_op(r.gate_out) * oracle::x_op(n, x.bits) * v;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r.frame_out.correction.degree() <= 2);
  }
}

TEST_CASE("frame_compose") {
  Rng rng(5);
  const auto id = ByproductFrame::identity(3);
  const ByproductFrame f{BitString::parse("101"), poly(3, {}, {{1, 2}}, {3})};
  CHECK(frame_compose(id, f) == f);
  CHECK(frame_compose(f, id) == f);

  // X then Z versus Z then X differ only by a phase.
  const auto xz = frame_compose(wire_semantics(1, 0, false, true), wire_semantics(1, 0, true, false));
  const auto zx = frame_compose(wire_semantics(1, 0, true, false), wire_semantics(1, 0, false, true));
  CHECK(xz.same_up_to_phase(zx));
  CHECK_FALSE(xz == zx);

  const ByproductFrame g{BitString::parse("011"), poly(3, {}, {{2, 3}})};
  CHECK(frame_compose(f, g).x_mask == (f.x_mask ^ g.x_mask));
  CHECK_THROWS_AS(frame_compose(f, ByproductFrame::identity(2)), std::invalid_argument);
}

TEST_CASE("frame_compose is the operator product and associative") {
  Rng rng(8);
  auto rand_frame = [&](int n) {
    return ByproductFrame{BitString(n, uniform_below(rng, std::uint64_t{1} << n)),
                          random_cubic(n, {false, true, true}, rng).poly()};
  };
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4;
    const auto a = rand_frame(n), b = rand_frame(n), c = rand_frame(n);
    const auto ab = frame_compose(a, b);
    CHECK((oracle::frame_op(ab) - oracle::frame_op(b) * oracle::frame_op(a)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(frame_compose(frame_compose(a, b), c) == frame_compose(a, frame_compose(b, c)));
  }
}

TEST_CASE("frames stay quadratic under random gadget and gate sequences") {
  Rng rng(99);
  CoinFlipper coin(rng);
  for (int seq = 0; seq < 10000; ++seq) {
    const int n = 3 + seq % 3;
    auto frame = ByproductFrame::identity(n);
    for (int step = 0; step < 8; ++step) {
      const int a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      const int b = (a + 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)))) % n;
      int c = 0;
      while (c == a || c == b) ++c;
      switch (uniform_below(rng, 4)) {
        case 0: frame = frame_compose(frame, wire_semantics(n, a, coin.next(), coin.next())); break;
        case 1: {
          std::array<bool, 6> t{};
          for (auto& x : t) x = coin.next();
          frame = frame_compose(frame, swap_semantics(n, a, b, t));
          break;
        }
        case 2: frame = frame_compose(frame, ccz_semantics(n, a, b, c, CczBasis::Y, {coin.next(), coin.next(), coin.next()}).frame); break;
        default: {
          Polynomial g(n);
          g.toggle_cubic(a, b, c);
          frame = push_frame(frame, g).frame_out;
        }
      }
      REQUIRE(frame.correction.degree() <= 2);
    }
  }
}

TEST_CASE("wire dense oracle") {
  const auto rep = wire_dense_oracle();
  CHECK(rep.ok);
  REQUIRE(rep.branches.size() == 4);
  for (const auto& b : rep.branches) {
    CHECK(b.probability == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(b.residual < 1e-12);
  }
  CHECK(rep.completeness_residual < 1e-12);
}

TEST_CASE("reference table") {
  const auto t = gadget_reference_table();
  CHECK(t["wire"]["rows"].size() == 4);
  CHECK(t["swap"]["rows"].size() == 64);
  CHECK(t["ccz"]["rows"].size() == 16);
  CHECK(t["ccz"]["rows"][0]["logic"] == "ccz");
  CHECK(outcome_bits(GadgetKind::Swap) == 6);
}
