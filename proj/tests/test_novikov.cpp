#include <cmath>
#include <random>

#include "doctest.h"
#include "nonarch/errors.hpp"
#include "nonarch/novikov.hpp"

using namespace nonarch;

namespace {

NovikovScalar T(const Rational& e) { return NovikovScalar::monomial(1.0, e); }

NovikovScalar random_scalar(std::mt19937_64& rng, int terms, const Rational& order) {
  std::uniform_int_distribution<int> num(0, 11);
  std::uniform_real_distribution<double> co(-2.0, 2.0);
  std::vector<NovikovTerm> t;
  for (int i = 0; i < terms; ++i) t.push_back({Rational(num(rng), 3), Complex(co(rng), co(rng))});
  t.push_back({Rational(0), Complex(1.5 + std::abs(co(rng)), 0.0)});
  return NovikovScalar::from_terms(t, order);
}

}  // namespace

TEST_CASE("add cancels and keeps the smaller order") {
  CHECK((NovikovScalar(1.0) + T(1) - T(1)).str() == "1");
  NovikovScalar x = NovikovScalar::monomial(1.0, Rational(1, 2), RatInf(Rational(2)));
  NovikovScalar s = x + T(3);
  CHECK(s.str_with_order() == "T^(1/2) + O(T^2)");
  CHECK((NovikovScalar() + x).str_with_order() == x.str_with_order());
}

TEST_CASE("mul monomials and order rule") {
  auto a = NovikovScalar::monomial(2.0, Rational(1, 2));
  auto b = NovikovScalar::monomial(3.0, Rational(1, 3));
  CHECK((a * b).str() == "6*T^(5/6)");
  CHECK(((NovikovScalar(1.0) + T(1)) * (NovikovScalar(1.0) - T(1))).str() == "1 - T^2");
  auto x = NovikovScalar::monomial(1.0, Rational(1), RatInf(Rational(3)));
  auto y = NovikovScalar::monomial(1.0, Rational(2));
  CHECK((x * y).order() == RatInf(Rational(5)));
}

TEST_CASE("valuation") {
  CHECK(valuation(NovikovScalar::monomial(3.0, Rational(1, 3)) + T(2)) == RatInf(Rational(1, 3)));
  CHECK(valuation(NovikovScalar()).is_inf());
  CHECK(valuation(NovikovScalar(5.0)) == RatInf(Rational(0)));
  CHECK_THROWS_AS(valuation(NovikovScalar::truncated_zero(Rational(2))), Error);
}

TEST_CASE("invert against the geometric series") {
  CHECK(invert(NovikovScalar::monomial(2.0, Rational(1)), Rational(5)).str() == "0.5*T^(-1)");
  auto inv = invert(NovikovScalar(1.0) + T(1), Rational(4));
  NovikovScalar oracle;
  for (int k = 0; k < 4; ++k) oracle += NovikovScalar::monomial(k % 2 ? -1.0 : 1.0, Rational(k));
  CHECK(inv.approx_equal(oracle));
  CHECK(inv.order() == RatInf(Rational(4)));
  auto x = NovikovScalar::monomial(2.0, Rational(1, 2)) + T(Rational(3, 2));
  CHECK(invert(invert(x, Rational(6)), Rational(4)).approx_equal(x.truncate(RatInf(Rational(4)))));
  CHECK_THROWS_AS(invert(NovikovScalar::truncated_zero(Rational(1)), Rational(3)), Error);
}

TEST_CASE("exp_scalar") {
  CHECK(exp_scalar(NovikovScalar(), Rational(3)).str() == "1");
  CHECK(exp_scalar(NovikovScalar(std::log(2.0)), Rational(3)).str() == "2");
  auto e = exp_scalar(T(1), Rational(4));
  NovikovScalar oracle;
  double f = 1.0;
  for (int k = 0; k < 4; ++k) {
    if (k) f *= k;
    oracle += NovikovScalar::monomial(1.0 / f, Rational(k));
  }
  CHECK(e.approx_equal(oracle));
  try {
    exp_scalar(T(-1), Rational(2));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NegativeValuation);
  }
}

TEST_CASE("canonical printing") {
  CHECK(NovikovScalar().str() == "0");
  CHECK((NovikovScalar(1.0) - T(1) + T(2)).str() == "1 - T + T^2");
  CHECK(NovikovScalar::monomial(Complex(0, 1), Rational(-1)).str() == "i*T^(-1)");
  CHECK(NovikovScalar::monomial(Complex(1.5, -2), Rational(1, 3)).str() == "(1.5-2i)*T^(1/3)");
  CHECK(NovikovScalar::truncated_zero(Rational(3)).str_with_order() == "O(T^3)");
}

TEST_CASE("field axioms up to truncation") {
  std::mt19937_64 rng(7);
  const Rational O(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_scalar(rng, 3, O), b = random_scalar(rng, 3, O), c = random_scalar(rng, 3, O);
    CHECK(((a + b) + c).approx_equal(a + (b + c)));
    CHECK((a * (b + c)).approx_equal(a * b + a * c, 1e-9));
    auto one = a * invert(a, O);
    CHECK(one.approx_equal(NovikovScalar(1.0), 1e-9));
    CHECK((a * b).valuation() == a.valuation() + b.valuation().value());
    auto pa = random_scalar(rng, 2, O) - NovikovScalar(1.5), pb = random_scalar(rng, 2, O);
    auto lhs = exp_scalar(pa + pb, O);
    double scale = 1.0;
    for (const auto& t : lhs.terms()) scale = std::max(scale, std::abs(t.coeff));
    CHECK(lhs.max_coeff_distance(exp_scalar(pa, O) * exp_scalar(pb, O)) <= 1e-9 * scale);
  }
}

TEST_CASE("complex_roots") {
  auto r = complex_roots({Complex(-1), 0.0, 0.0, Complex(1)});
  REQUIRE(r.size() == 3);
  for (auto z : r) CHECK(std::abs(z * z * z - 1.0) < 1e-12);
}

TEST_CASE("puiseux of lambda^3 - T") {
  NovikovPolynomial p{{-T(1), 0, 0, 1}};
  auto roots = puiseux_roots(p, Rational(3));
  REQUIRE(roots.size() == 3);
  std::vector<NovikovScalar> expect;
  for (int s = 0; s < 3; ++s) expect.push_back(NovikovScalar::monomial(std::polar(1.0, 2 * M_PI * s / 3), Rational(1, 3)));
  CHECK(multiset_distance(roots, expect, 1e-9) >= 0);
}

TEST_CASE("puiseux linear and quadratic") {
  auto r = puiseux_roots(NovikovPolynomial{{-5, 1}}, Rational(3));
  REQUIRE(r.size() == 1);
  CHECK(r[0].str() == "5");
  // lambda^2 - T lambda - T^3 = (lambda - l1)(lambda - l2), l = (T +- T sqrt(1+4T))/2
  NovikovPolynomial q{{-T(3), -T(1), 1}};
  auto roots = puiseux_roots(q, Rational(5));
  REQUIRE(roots.size() == 2);
  // binomial oracle: sqrt(1+4T) = sum C(1/2,k) (4T)^k
  NovikovScalar sq;
  double c = 1.0;
  for (int k = 0; k < 5; ++k) {
    sq += NovikovScalar::monomial(c * std::pow(4.0, k), Rational(k));
    c *= (0.5 - k) / (k + 1);
  }
  auto l1 = ((T(1) + T(1) * sq).scale(0.5)).truncate(RatInf(Rational(5)));
  auto l2 = ((T(1) - T(1) * sq).scale(0.5)).truncate(RatInf(Rational(5)));
  CHECK(multiset_distance(roots, {l1, l2}, 1e-9) >= 0);
  CHECK(roots[0].valuation() == RatInf(Rational(1)));
  CHECK(roots[1].valuation() == RatInf(Rational(2)));
}

TEST_CASE("puiseux with a repeated leading term") {
  // (lambda - 2T^{1/2} - T)(lambda - 2T^{1/2} + T)(lambda + 2T^{1/2})^2
  auto a = NovikovScalar::monomial(2.0, Rational(1, 2));
  std::vector<NovikovScalar> rs = {a + T(1), a - T(1), -a, -a + T(2)};
  auto p = NovikovPolynomial::from_roots(rs);
  auto roots = puiseux_roots(p, Rational(3));
  REQUIRE(roots.size() == 4);
  CHECK(multiset_distance(roots, rs, 1e-8) >= 0);
  for (const auto& r : roots) {
    auto res = p.evaluate(r);
    for (const auto& t : res.terms()) CHECK(t.exponent >= Rational(3));
  }
}

TEST_CASE("puiseux exact double root and depth limit") {
  auto p = NovikovPolynomial::from_roots({T(1), T(1)});
  auto roots = puiseux_roots(p, Rational(4));
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) CHECK(r.approx_equal(T(1)));
  numeric_config().ramification_depth = 0;
  CHECK_THROWS_AS(puiseux_roots(p, Rational(4)), Error);
  numeric_config().ramification_depth = 8;
}
