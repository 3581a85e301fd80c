#include <doctest.h>

#include <numbers>
#include <random>

#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/quantum.hpp"
#include "nonarch/selftest.hpp"

using namespace nonarch;

namespace {

NovikovScalar mono(Complex c, const Rational& e) { return NovikovScalar::monomial(c, e); }

bool coords_equal(const Coords& a, const Coords& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].approx_equal(b[i], tol)) return false;
  return true;
}

// H*(S^1): basis 1, e with e^2 = 0 and |e| = 1
QuantumRing circle() {
  QuantumRing r({{"1", 0}, {"e", 1}}, 0);
  r.set_product(0, 0, {NovikovScalar(1.0), NovikovScalar()});
  r.set_product(0, 1, {NovikovScalar(), NovikovScalar(1.0)});
  r.set_product(1, 0, {NovikovScalar(), NovikovScalar(1.0)});
  r.set_product(1, 1, {NovikovScalar(), NovikovScalar()});
  r.set_c1({NovikovScalar(), NovikovScalar()});
  return r;
}

}  // namespace

TEST_CASE("QH(CP^n) ring structure") {
  for (int n = 1; n <= 5; ++n) {
    QuantumRing r = qh_projective(n, Rational(1));
    CHECK(r.dim() == n + 1);
    CHECK(r.associativity_defect() <= 1e-12);
    CHECK(r.unit_laws_hold());
    CHECK(r.classical_part_graded());
    // c^{n+1} = T^E
    Coords c = r.basis_vector(1), p = r.basis_vector(0);
    for (int k = 0; k <= n; ++k) p = r.multiply(p, c);
    Coords expect(n + 1);
    expect[0] = mono(1.0, Rational(1));
    CHECK(coords_equal(p, expect));
  }
  CHECK_THROWS_AS(qh_projective(0, Rational(1)), Error);
  CHECK_THROWS_AS(qh_projective(2, Rational(0)), Error);
}

TEST_CASE("c1 eigenvalues of CP^n") {
  for (int n = 1; n <= 6; ++n) {
    auto ev = c1_eigenvalues(qh_projective(n, Rational(1)), Rational(3));
    std::vector<NovikovScalar> expect;
    for (int s = 0; s <= n; ++s)
      expect.push_back(mono(double(n + 1) * std::polar(1.0, 2 * std::numbers::pi * s / (n + 1)), Rational(1, n + 1)));
    CHECK(multiset_distance(ev, expect, 1e-9) <= 1e-9);
  }
}

TEST_CASE("Kunneth product and P1xP1") {
  QuantumRing a = qh_projective(1, Rational(1)), b = qh_projective(1, Rational(3, 2));
  QuantumRing r = qh_tensor(a, b);
  CHECK(r.dim() == 4);
  CHECK(r.basis()[3].name == "cxc");
  CHECK(r.basis()[3].degree == 4);
  CHECK(r.associativity_defect() <= 1e-12);
  CHECK(r.unit_laws_hold());
  auto ev = c1_eigenvalues(r, Rational(3));
  std::vector<NovikovScalar> expect;
  for (double s : {1.0, -1.0})
    for (double t : {1.0, -1.0}) expect.push_back(mono(2 * s, Rational(1, 2)) + mono(2 * t, Rational(3, 4)));
  CHECK(multiset_distance(ev, expect, 1e-9) <= 1e-9);
}

TEST_CASE("Koszul sign in the tensor product") {
  QuantumRing r = qh_tensor(circle(), circle());
  // (e x 1)(1 x e) = e x e, (1 x e)(e x 1) = -(e x e)
  const int ex1 = 2, onexe = 1, exe = 3;
  CHECK(r.product(ex1, onexe)[exe].approx_equal(NovikovScalar(1.0)));
  CHECK(r.product(onexe, ex1)[exe].approx_equal(NovikovScalar(-1.0)));
  CHECK(r.associativity_defect() <= 1e-12);
  CHECK(r.classical_part_graded());
}

TEST_CASE("characteristic polynomial") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const int d = 1 + t % 5;
    NovikovMatrix a(d, std::vector<NovikovScalar>(d));
    std::vector<NovikovScalar> diag;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) a[i][j] = random_scalar(rng, 2, Rational(-1), Rational(2));
    for (int i = 0; i < d; ++i) diag.push_back(a[i][i]);
    NovikovPolynomial p = characteristic_polynomial(a);
    NovikovPolynomial q = NovikovPolynomial::from_roots(diag);
    REQUIRE(p.degree() == d);
    for (int i = 0; i <= d; ++i) CHECK(p.coeffs[i].approx_equal(q.coeffs[i], 1e-8));
  }
  NovikovMatrix m{{mono(1.0, Rational(1)), NovikovScalar(2.0)}, {NovikovScalar(3.0), mono(1.0, Rational(-1, 2))}};
  NovikovPolynomial p = characteristic_polynomial(m);
  CHECK(p.coeffs[2].approx_equal(NovikovScalar(1.0)));
  CHECK(p.coeffs[1].approx_equal(-(m[0][0] + m[1][1])));
  CHECK(p.coeffs[0].approx_equal(m[0][0] * m[1][1] - m[0][1] * m[1][0]));
}

TEST_CASE("mult_matrix columns") {
  QuantumRing r = qh_projective(2, Rational(1));
  NovikovMatrix M = mult_matrix(r, r.c1());
  for (int j = 0; j < 3; ++j) {
    Coords col(3);
    for (int i = 0; i < 3; ++i) col[i] = M[i][j];
    CHECK(coords_equal(col, r.multiply(r.c1(), r.basis_vector(j))));
  }
}

TEST_CASE("vanishing c1 gives zero eigenvalues") {
  auto ev = c1_eigenvalues(circle(), Rational(3));
  REQUIRE(ev.size() == 2);
  for (const auto& e : ev) CHECK_FALSE(e.has_terms());
}

TEST_CASE("folklore matching for CP2") {
  for (Rational E : {Rational(1), Rational(2)}) {
    LaurentSeries W = builtin_potential("cp2_chart", {E}, Rational(6));
    CriticalSystem sys(W);
    std::vector<TorusPoint> pts;
    for (const auto& s : builtin_seeds("cp2_chart", {E})) pts.push_back(newton_lift(sys, s, Rational(4)));
    auto rep = folklore_match(critical_values(W, pts, Rational(4)), c1_eigenvalues(qh_projective(2, E), Rational(4)), 1e-9);
    CHECK(rep.success());
    CHECK(rep.pairs.size() == 3);
    for (int m : rep.critical_multiplicity) CHECK(m == 1);
  }
}

TEST_CASE("folklore matching reports failures") {
  std::vector<NovikovScalar> ev{mono(1.0, Rational(1)), mono(-1.0, Rational(1))};
  auto ok = folklore_match({mono(-1.0, Rational(1))}, ev, 1e-9);
  CHECK(ok.success());
  REQUIRE(ok.pairs.size() == 1);
  CHECK(ok.pairs[0].eigenvalue == 1);

  auto bad = folklore_match({mono(1.0, Rational(1)), mono(1.0, Rational(1))}, ev, 1e-9);
  CHECK_FALSE(bad.success());
  CHECK(bad.unmatched == std::vector<int>{1});
  CHECK(bad.critical_multiplicity == std::vector<int>{2, 2});

  auto off = folklore_match({mono(1.0, Rational(1, 2))}, ev, 1e-9);
  CHECK_FALSE(off.success());
}

TEST_CASE("quantum ring JSON") {
  QuantumRing r = qh_tensor(qh_projective(1, Rational(1)), qh_projective(2, Rational(1, 2)));
  QuantumRing s = quantum_ring_from_json(to_json(r), Rational(4));
  REQUIRE(s.dim() == r.dim());
  CHECK(s.unit() == r.unit());
  CHECK(coords_equal(s.c1(), r.c1()));
  for (int i = 0; i < r.dim(); ++i) {
    CHECK(s.basis()[i].name == r.basis()[i].name);
    for (int j = 0; j < r.dim(); ++j) CHECK(coords_equal(s.product(i, j), r.product(i, j)));
  }

  const char* text = R"j({"format":"quantum_ring","basis":[["1",0],["h",2]],"unit":0,
    "c1":["0","2"],"products":[[0,0,["1","0"]],[0,1,["0","1"]],[1,0,["0","1"]],[1,1,["T^(1/2)","0"]]]})j";
  QuantumRing q = quantum_ring_from_json(text, Rational(4));
  auto ev = c1_eigenvalues(q, Rational(3));
  CHECK(multiset_distance(ev, {mono(2.0, Rational(1, 4)), mono(-2.0, Rational(1, 4))}, 1e-9) <= 1e-9);

  CHECK_THROWS_AS(quantum_ring_from_json(R"({"format":"other"})", Rational(4)), Error);
  CHECK_THROWS_AS(quantum_ring_from_json("not json", Rational(4)), Error);
}
