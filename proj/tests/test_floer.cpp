#include <doctest.h>

#include <numbers>
#include <random>

#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/floer.hpp"
#include "nonarch/models.hpp"
#include "nonarch/selftest.hpp"

using namespace nonarch;

namespace {

LaurentSeries clifford_w(const Rational& cutoff) {
  LaurentSeries W(2, cutoff);
  W.add_term({1, 0}, NovikovScalar::monomial(1.0, Rational(1)));
  W.add_term({0, 1}, NovikovScalar::monomial(1.0, Rational(1)));
  W.add_term({-1, -1}, NovikovScalar::monomial(1.0, Rational(1)));
  return W;
}

TorusPoint critical_point(int s) {
  const Complex z = std::polar(1.0, 2 * std::numbers::pi * s / 3);
  return {{NovikovScalar(z), NovikovScalar(z)}};
}

NovikovScalar mono(double c, int num, int den = 1) { return NovikovScalar::monomial(c, Rational(num, den)); }

}  // namespace

TEST_CASE("superpotential of the strict Clifford model") {
  ExteriorAlgebra alg(2, false);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), Rational(3));
  Superpotential sp = superpotential(m);
  CHECK(sp.q_zero());
  CHECK(sp.W.approx_equal(clifford_w(Rational(3))));

  MkMap m0 = build_mk(m, 0);
  SeriesVec v = m0.apply_basis({});
  REQUIRE(v.size() == 1);
  CHECK(v.begin()->first == alg.basis()->unit());
  CHECK(v.begin()->second.approx_equal(sp.W));
}

TEST_CASE("Maslov-0 curvature is an obstruction") {
  ExteriorAlgebra alg(2, false);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), Rational(3));
  m.add(0, {Rational(2), 0, {0, 1}}, {}, alg.generator(0), Rational(1));
  CHECK_THROWS_WITH_AS(build_mk(m, 0), doctest::Contains("NonzeroObstruction"), Error);
  CHECK_FALSE(superpotential(m).q_zero());
}

TEST_CASE("build_mk applies multilinearly") {
  ExteriorAlgebra alg(2, false);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), Rational(3));
  MkMap m2 = build_mk(m, 2);
  const int t1 = alg.generator(0), t2 = alg.generator(1);
  SeriesVec x{{t1, LaurentSeries::variable(2, 0).with_cutoff(Rational(3))}};
  SeriesVec y{{t2, LaurentSeries::constant(2, NovikovScalar(2.0)).with_cutoff(Rational(3))}};
  SeriesVec out = m2.apply({x, y});
  // m2(t1, t2) = -t1t2 at the zero label
  REQUIRE(out.count(alg.index(3)));
  CHECK(out.at(alg.index(3)).approx_equal(LaurentSeries::variable(2, 0).with_cutoff(Rational(3)).scale(NovikovScalar(-2.0))));
}

TEST_CASE("divisor identity and m1 squared at random points") {
  ExteriorAlgebra alg(2, false);
  const Rational cut(3);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), cut);
  LaurentSeries W = superpotential(m).W;
  std::mt19937_64 rng(5);
  const int n = alg.dim();
  for (int t = 0; t < 10; ++t) {
    TorusPoint y = random_unit_point(rng, 2);
    ScalarMatrix M = m1_matrix(m, y, cut);
    for (int i = 0; i < 2; ++i) {
      NovikovScalar dw = evaluate(log_derivative(W, i), y, cut);
      for (int r = 0; r < n; ++r)
        CHECK(M[r][alg.generator(i)].approx_equal(r == alg.basis()->unit() ? dw : NovikovScalar()));
    }
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        NovikovScalar s;
        for (int k = 0; k < n; ++k) s += M[r][k] * M[k][c];
        CHECK_FALSE(s.has_terms());
      }
  }
}

TEST_CASE("novikov_rank on small matrices") {
  const NovikovScalar one(1.0), z;
  CHECK(novikov_rank({{one, z}, {z, one}}) == 2);
  CHECK(novikov_rank({{one, mono(1, 1)}, {mono(1, 1), mono(1, 2)}}) == 1);
  CHECK(novikov_rank({{mono(2, 1, 2), mono(1, 1)}, {mono(1, 0), mono(3, 1, 3)}}) == 2);
  CHECK(novikov_rank({{NovikovScalar::truncated_zero(Rational(3))}}) == 0);
  // valuation 5/2 with truncation 3 and margin 1
  ScalarMatrix close{{NovikovScalar::monomial(1.0, Rational(5, 2), RatInf(Rational(3)))}};
  CHECK_THROWS_WITH_AS(novikov_rank(close), doctest::Contains("PrecisionLoss"), Error);
  CHECK(novikov_rank(close, {Rational(1, 4), PivotOrder::MinValuation}) == 1);
  // both elimination orders agree
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    ScalarMatrix a(3, std::vector<NovikovScalar>(3));
    for (auto& row : a)
      for (auto& x : row) x = random_scalar(rng, 2, Rational(0), Rational(1));
    a[2] = a[0];
    for (int c = 0; c < 3; ++c) a[2][c] += a[1][c].shift(Rational(1, 2));
    const int r1 = novikov_rank(a, {Rational(0), PivotOrder::MinValuation});
    const int r2 = novikov_rank(a, {Rational(0), PivotOrder::ColumnScan});
    CHECK(r1 == 2);
    CHECK(r2 == 2);
  }
}

TEST_CASE("HF detects critical points") {
  ExteriorAlgebra alg(2, false);
  const Rational cut(3);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), cut);
  for (int s = 0; s < 3; ++s) {
    HfReport r = hf_report(m, critical_point(s));
    CHECK(r.total == 4);
    CHECK(r.even == 2);
    CHECK(r.odd == 2);
    CHECK(hf_dimension(m, critical_point(s), {Rational(1), PivotOrder::ColumnScan}) == 4);
  }
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    TorusPoint y = random_unit_point(rng, 2);
    CHECK(hf_dimension(m, y) == 0);
    CHECK(hf_dimension(m, y, {Rational(1), PivotOrder::ColumnScan}) == 0);
  }
  // lifted by Newton from the seed
  CriticalSystem sys(superpotential(m).W);
  TorusPoint y = newton_lift(sys, Seed{{Rational(0), Rational(0)}, {1.0, 1.0}}, cut);
  CHECK(hf_dimension(m, y) > 0);
}

TEST_CASE("Jacobian division on the strict and minimal models") {
  ExteriorAlgebra alg(2, false);
  const Rational cut(3);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), cut);
  for (int x = 0; x < alg.dim(); ++x) {
    auto R = jacobian_divide(m, x, cut);
    CHECK(R.size() == 2);
    CHECK(jacobian_division_residual(m, x, R, cut) <= 1e-9);
  }
  // generators divide with R_i = pairing * 1
  auto R = jacobian_divide(m, alg.generator(0), cut);
  CHECK(R[0].size() == 1);
  CHECK(R[0].count(alg.basis()->unit()));
  CHECK(R[1].empty());

  DeformedChainModel dm = deformed_chain_model(clifford_cp2_classes(Rational(3)), Rational(1), Rational(2), 3);
  HplResult h = hpl_minimal_model(dm.m_chain, dm.con, {3, 3});
  for (int x = 0; x < h.m_min.source()->dim(); ++x) {
    auto Rm = jacobian_divide(h.m_min, x, Rational(2));
    CHECK(jacobian_division_residual(h.m_min, x, Rm, Rational(2)) <= 1e-9);
  }
}

TEST_CASE("closed-open map on the deformed chain model") {
  DeformedChainModel dm = deformed_chain_model(clifford_cp2_classes(Rational(3)), Rational(1), Rational(2), 3);
  OperatorSystem q = qhat_c1(dm.m_chain);
  CHECK(q.is_rcc());
  for (const auto& [key, t] : q.entries()) CHECK(key.label.maslov > 0);
  CHECK(hochschild_delta(dm.m_chain, q).reliable_part().is_zero());

  HplResult h = hpl_minimal_model(dm.m_chain, dm.con, {3, 3});
  OperatorSystem e = unit_cochain(dm.small.basis(), Rational(2));
  OperatorSystem th = theta(h.i_morph, h.p_morph, unit_cochain(dm.chain.basis(), Rational(2)));
  CHECK(th.equals(e));

  SeriesVec pe = pproj(e);
  REQUIRE(pe.size() == 1);
  CHECK(pe.begin()->first == dm.small.basis()->unit());

  CoReport r = co_c1(h, dm.m_chain);
  CHECK(r.match);
  CHECK(r.residual <= 1e-9);
  CHECK(r.W.approx_equal(clifford_w(Rational(2))));
}

TEST_CASE("theta rejects curved compositions") {
  ExteriorAlgebra alg(2, false);
  OperatorSystem id = identity_system(alg.basis(), Rational(2));
  OperatorSystem curved = id;
  curved.add(0, LabelClass::zero(2), {}, alg.basis()->unit(), Rational(1));
  CHECK_NOTHROW(theta(id, id, id));
  CHECK_THROWS_WITH_AS(theta(curved, id, id), doctest::Contains("CurvedComposition"), Error);
}
