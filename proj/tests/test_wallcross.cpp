#include <doctest.h>

#include <numbers>
#include <random>

#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/selftest.hpp"
#include "nonarch/wallcross.hpp"

using namespace nonarch;

namespace {

NovikovScalar mono(Complex c, const Rational& e) { return NovikovScalar::monomial(c, e); }

// Y1 exp(T^a Y2), summed directly
LaurentSeries focus_focus_image(const Rational& a, const Rational& cutoff) {
  LaurentSeries out(2, cutoff);
  double fact = 1;
  for (int k = 0; Rational(k) * a < cutoff; ++k) {
    if (k) fact *= k;
    out.add_term({1, k}, mono(1.0 / fact, Rational(k) * a));
  }
  return out;
}

LaurentSeries clifford_tilde(const Rational& cutoff) {
  LaurentSeries W(2, cutoff);
  W.add_term({1, 0}, NovikovScalar(1.0));
  W.add_term({0, 1}, NovikovScalar(1.0));
  W.add_term({-1, -1}, mono(1.0, Rational(1)));
  return W;
}

}  // namespace

TEST_CASE("focus-focus change on monomials") {
  const Rational a(1, 2), cut(4);
  CoordinateChange chg = CoordinateChange::focus_focus(a, cut);
  CHECK(chg.positive());
  CHECK(apply_change(chg, LaurentSeries::variable(2, 0).with_cutoff(cut)).approx_equal(focus_focus_image(a, cut)));
  CHECK(apply_change(chg, LaurentSeries::variable(2, 1).with_cutoff(cut)).approx_equal(LaurentSeries::variable(2, 1).with_cutoff(cut)));

  CoordinateChange shift = CoordinateChange::identity(2, cut);
  shift.lambda = {Rational(1, 2), Rational(-1, 4)};
  LaurentSeries m = LaurentSeries::monomial(2, {2, 1}, NovikovScalar(1.0)).with_cutoff(cut);
  CHECK(apply_change(shift, m).approx_equal(LaurentSeries::monomial(2, {2, 1}, mono(1.0, Rational(3, 4))).with_cutoff(cut)));
}

TEST_CASE("inverse change") {
  const Rational cut(4);
  CoordinateChange chg = CoordinateChange::focus_focus(Rational(1, 2), cut);
  CoordinateChange inv = invert_change(chg, cut);
  LaurentSeries expect(2, cut);
  expect.add_term({0, 1}, mono(-1.0, Rational(1, 2)));
  CHECK(inv.F[0].approx_equal(expect));
  CHECK(inv.F[1].is_zero());

  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    CoordinateChange c = random_change(rng, 2, true, cut);
    CoordinateChange ci = invert_change(c, cut);
    LaurentSeries f = random_series(rng, 2, 4, Rational(0), cut);
    CHECK(apply_change(c, apply_change(ci, f)).approx_equal(f, 1e-8));
    CHECK(apply_change(ci, apply_change(c, f)).approx_equal(f, 1e-8));
  }
}

TEST_CASE("change is a ring homomorphism") {
  std::mt19937_64 rng(4);
  const Rational cut(3);
  for (int t = 0; t < 5; ++t) {
    CoordinateChange c = random_change(rng, 2, true, cut);
    LaurentSeries f = random_series(rng, 2, 3, Rational(0), cut), g = random_series(rng, 2, 3, Rational(0), cut);
    CHECK(apply_change(c, f + g).approx_equal(apply_change(c, f) + apply_change(c, g), 1e-8));
    CHECK(apply_change(c, f * g).approx_equal(apply_change(c, f) * apply_change(c, g), 1e-8));
  }
  // translations move energy by <alpha, lambda>, at most 8 here, so compare below a wide cutoff
  const Rational wide = cut + Rational(8);
  for (int t = 0; t < 5; ++t) {
    CoordinateChange c = random_change(rng, 2, false, wide);
    for (auto& F : c.F) F = LaurentSeries(2, wide);
    LaurentSeries f = random_series(rng, 2, 3, Rational(0), wide), g = random_series(rng, 2, 3, Rational(0), wide);
    CHECK(apply_change(c, f * g).with_cutoff(cut).approx_equal((apply_change(c, f) * apply_change(c, g)).with_cutoff(cut), 1e-8));
  }
}

TEST_CASE("push_point and evaluation") {
  const Rational a(1, 2), cut(5);
  CoordinateChange chg = CoordinateChange::focus_focus(a, cut);
  TorusPoint y{{NovikovScalar(Complex(0.6, 0.8)), NovikovScalar(Complex(-1.0, 0.0))}};
  TorusPoint z = push_point(chg, y, Rational(4));
  CHECK(z.coords[0].approx_equal(y.coords[0] * exp_scalar(mono(-1.0, a), Rational(4)), 1e-9));
  CHECK(z.coords[1].approx_equal(y.coords[1]));

  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    TorusPoint p = random_unit_point(rng, 2);
    LaurentSeries f = random_series(rng, 2, 3, Rational(0), cut);
    CHECK(evaluate(apply_change(chg, f), p, Rational(4))
              .approx_equal(evaluate(f, push_point(chg, p, Rational(4)), Rational(4)), 1e-8));
  }

  TorusPoint far{{NovikovScalar(1.0), mono(1.0, Rational(-1))}};
  CHECK_THROWS_WITH_AS(push_point(chg, far, Rational(3)), doctest::Contains("DivergentEvaluation"), Error);
}

TEST_CASE("non-positive changes are rejected") {
  CoordinateChange bad = CoordinateChange::identity(2, Rational(3));
  bad.F[0].add_term({0, 1}, NovikovScalar(1.0));
  CHECK_FALSE(bad.positive());
  CHECK_THROWS_WITH_AS(apply_change(bad, LaurentSeries::variable(2, 0).with_cutoff(Rational(3))),
                       doctest::Contains("DivergenceAtCutoff"), Error);
}

TEST_CASE("potential match with a control") {
  const Rational cut(4);
  CoordinateChange chg = CoordinateChange::focus_focus(Rational(1, 2), cut);
  LaurentSeries Wt = clifford_tilde(cut);
  LaurentSeries W = apply_change(chg, Wt);
  PotentialMatch ok = verify_potential_match(W, Wt, chg);
  CHECK(ok.match);
  CHECK(ok.max_residual <= 1e-9);

  LaurentSeries Wbad = W;
  Wbad.add_term({1, 1}, mono(1e-3, Rational(2)));
  PotentialMatch no = verify_potential_match(Wbad, Wt, chg);
  CHECK_FALSE(no.match);
  CHECK(no.max_residual == doctest::Approx(1e-3));
  CHECK_FALSE(no.offending.empty());
}

TEST_CASE("critical points transport across the wall") {
  const Rational order(4), cut(5);
  CoordinateChange chg = CoordinateChange::focus_focus(Rational(1, 2), cut);
  LaurentSeries Wt = clifford_tilde(cut);
  LaurentSeries W = apply_change(chg, Wt);
  CriticalSystem sys(W);
  for (int s = 0; s < 3; ++s) {
    const Complex z = std::polar(1.0, 2 * std::numbers::pi * s / 3);
    TorusPoint y = newton_lift(sys, Seed{{Rational(1, 3), Rational(1, 3)}, {z, z}}, order);
    TransportReport r = transport_critical(chg, y, W, Wt, order);
    CHECK(r.critical);
    CHECK(r.critical_tilde);
    CHECK(r.consistent());
    CHECK(evaluate(W, y, order).approx_equal(evaluate(Wt, r.y_tilde, order), 1e-9));
    CHECK(evaluate(W, y, order).approx_equal(mono(3.0 * z, Rational(1, 3)), 1e-9));
  }
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    TransportReport r = transport_critical(chg, random_unit_point(rng, 2), W, Wt, order);
    CHECK_FALSE(r.critical);
    CHECK(r.consistent());
  }
}

TEST_CASE("D-ideal defect") {
  std::mt19937_64 rng(13);
  const Rational cut(4);
  for (int t = 0; t < 5; ++t) {
    CoordinateChange c = random_change(rng, 2, true, cut);
    LaurentSeries Wt = random_series(rng, 2, 3, Rational(0), cut);
    CHECK(d_ideal_defect(c, Wt, random_unit_point(rng, 2), Rational(3)) <= 1e-8);
  }
}

TEST_CASE("coordinate change JSON") {
  std::mt19937_64 rng(1);
  CoordinateChange c = random_change(rng, 3, false, Rational(3));
  CoordinateChange d = coordinate_change_from_json(to_json(c));
  REQUIRE(d.rank() == 3);
  CHECK(d.lambda == c.lambda);
  for (int i = 0; i < 3; ++i) CHECK(d.F[i].approx_equal(c.F[i], 1e-12));
  LaurentSeries f = random_series(rng, 2, 4, Rational(-1), Rational(3));
  CHECK(series_from_json(series_to_json(f)).approx_equal(f, 1e-12));
  CHECK_THROWS_AS(coordinate_change_from_json("[1,2]"), Error);
}
