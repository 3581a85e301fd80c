#include "nonarch/selftest.hpp"

#include <cstdlib>
#include <functional>
#include <numbers>

#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/floer.hpp"
#include "nonarch/models.hpp"
#include "nonarch/wallcross.hpp"

namespace nonarch {

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return !checks.empty();
}

OperatorSystem random_operator_system(const RandomSystemSpec& spec, std::mt19937_64& rng) {
  const auto& B = *spec.basis;
  OperatorSystem f(spec.basis, spec.cutoff, kCompleteArity, spec.rcc);
  std::uniform_real_distribution<double> U(0, 1);
  std::uniform_int_distribution<int> C(1, 3);
  std::vector<LabelClass> labels{LabelClass::zero(B.rank())};
  labels.insert(labels.end(), spec.labels.begin(), spec.labels.end());
  for (const auto& lab : labels) {
    if (lab.energy > spec.cutoff) continue;
    for (int k = 0; k <= spec.max_arity; ++k) {
      if (k == 0 && lab.is_zero() && !spec.rcc) continue;
      Word w(k, 0);
      std::function<void(int)> rec = [&](int p) {
        if (p == k) {
          if (U(rng) > spec.density) return;
          int sum = 0;
          for (int x : w) {
            if (spec.rcc && x == B.unit()) return;
            sum += B.degree(x);
          }
          int want = spec.label_degree + sum - k + 1 - lab.maslov;
          std::vector<int> outs;
          for (int o = 0; o < B.dim(); ++o)
            if (B.degree(o) == want) outs.push_back(o);
          if (outs.empty()) return;
          int o = outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)];
          int c = C(rng) * (U(rng) < 0.5 ? -1 : 1);
          f.add(k, lab, w, o, Rational(c));
          return;
        }
        for (int x = 0; x < B.dim(); ++x) {
          w[p] = x;
          rec(p + 1);
        }
      };
      rec(0);
    }
  }
  return f;
}

NovikovScalar random_scalar(std::mt19937_64& rng, int max_terms, const Rational& lo, const Rational& hi) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  const std::int64_t a = (lo * Rational(12)).floor(), b = (hi * Rational(12)).floor();
  std::uniform_int_distribution<std::int64_t> ex(a, b);
  std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 2 * std::numbers::pi);
  std::vector<NovikovTerm> ts;
  const int n = nt(rng);
  for (int i = 0; i < n; ++i) ts.push_back({Rational(ex(rng), 12), std::polar(mod(rng), arg(rng))});
  return NovikovScalar::from_terms(std::move(ts));
}

TorusPoint random_unit_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> arg(0.0, 2 * std::numbers::pi);
  TorusPoint y;
  for (int i = 0; i < n; ++i)
    y.coords.push_back(NovikovScalar::monomial(std::polar(1.0, arg(rng)), Rational(0)) +
                       random_scalar(rng, 2, Rational(1, 2), Rational(2)));
  return y;
}

LaurentSeries random_series(std::mt19937_64& rng, int n, int terms, const Rational& min_val, const Rational& cutoff) {
  std::uniform_int_distribution<int> ex(-2, 2);
  LaurentSeries f(n, cutoff);
  for (int t = 0; t < terms; ++t) {
    Exponent a(n);
    for (auto& x : a) x = ex(rng);
    f.add_term(a, random_scalar(rng, 2, min_val, min_val + Rational(2)));
  }
  return f;
}

RootSample random_root_polynomial(std::mt19937_64& rng, int degree) {
  RootSample s;
  for (int i = 0; i < degree; ++i) s.roots.push_back(random_scalar(rng, 2, Rational(-1), Rational(2)));
  s.poly = NovikovPolynomial::from_roots(s.roots);
  return s;
}

CoordinateChange random_change(std::mt19937_64& rng, int n, bool zero_lambda, const Rational& cutoff) {
  std::uniform_int_distribution<int> l(-4, 4), ex(-1, 1), nt(1, 3);
  CoordinateChange c = CoordinateChange::identity(n, cutoff);
  if (!zero_lambda)
    for (auto& x : c.lambda) x = Rational(l(rng), 4);
  for (auto& f : c.F) {
    const int k = nt(rng);
    for (int t = 0; t < k; ++t) {
      Exponent a(n);
      for (auto& x : a) x = ex(rng);
      f.add_term(a, random_scalar(rng, 1, Rational(1, 2), Rational(3, 2)).scale(0.5));
    }
  }
  return c;
}

namespace {

bool inject_fault() {
  const char* v = std::getenv("NONARCH_INJECT_FAULT");
  return v && *v && std::string(v) != "0";
}

int deg(const OperatorSystem& f) { return f.label_degree().value_or(0); }

Rational sgn(int e) { return Rational(((e % 2) + 2) % 2 ? -1 : 1); }

struct Checker {
  SuiteCheck c;
  explicit Checker(std::string name) { c.identity = std::move(name); }
  void record(bool ok, const std::string& detail) {
    ++c.trials;
    if (!ok) {
      ++c.failures;
      if (c.counterexample.empty()) c.counterexample = detail;
    }
  }
  // a - b must vanish
  void zero(const OperatorSystem& a, const OperatorSystem& b, int trial) {
    std::string d = a.describe_difference(b);
    record(d.empty(), "trial " + std::to_string(trial) + ": " + d);
  }
};

OperatorSystem add(OperatorSystem a, const OperatorSystem& b, const Rational& c = Rational(1)) {
  a.add_system(b, c);
  return a;
}

OperatorSystem br(const OperatorSystem& g, std::initializer_list<const OperatorSystem*> fs) {
  return braces(g, std::vector<const OperatorSystem*>(fs));
}

SuiteReport ainf_suite(std::uint64_t seed, const Rational& cutoff, int trials) {
  std::mt19937_64 rng(seed);
  ExteriorAlgebra alg(2, false);
  const BasisPtr B = alg.basis();
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), cutoff);
  if (inject_fault()) {
    const LabelClass z = LabelClass::zero(2);
    m.add(2, z, {alg.generator(0), alg.generator(1)}, alg.index(3), Rational(2));
  }
  const std::vector<LabelClass> labs{{Rational(1, 2), 2, {1, 0}}, {Rational(1), 0, {0, 1}}};
  auto rnd = [&](int d, bool rcc, int arity = 3) {
    return random_operator_system({B, labs, d, arity, rcc, 0.25, cutoff}, rng);
  };
  std::uniform_int_distribution<int> D(-1, 2);
  const OperatorSystem e = unit_cochain(B, cutoff);

  Checker mm("m{m} = 0"), brace1("h{g}{f} = h{g{f}} + h{g,f} + (-1)^{|g||f|} h{f,g}"),
      brace2("h{g}{f1,f2} expansion"), skew("[f,g] = -(-1)^{|f||g|}[g,f]"), jacobi("graded Jacobi"),
      leibniz("graded Leibniz"), dd("delta delta = 0 on rCC"), closure("rCC closure of delta and cup"),
      unit("e cup f = f cup e = f"), dunit("delta e = 0"), assoc("cup associativity up to delta-exact");

  AinfReport rep = check_ainf(m);
  mm.record(rep.ok, rep.summary());

  for (int t = 0; t < trials; ++t) {
    {
      OperatorSystem h = rnd(D(rng), false), g = rnd(D(rng), false, 2), f = rnd(D(rng), false, 2);
      OperatorSystem lhs = br(br(h, {&g}), {&f});
      OperatorSystem gf = br(g, {&f});
      OperatorSystem rhs = add(add(br(h, {&gf}), br(h, {&g, &f})), br(h, {&f, &g}), sgn(deg(g) * deg(f)));
      brace1.zero(lhs, rhs, t);
    }
    {
      OperatorSystem h = rnd(D(rng), false, 2), g = rnd(D(rng), false, 2), f1 = rnd(D(rng), false, 1),
                     f2 = rnd(D(rng), false, 1);
      const int dg = deg(g), d1 = deg(f1), d2 = deg(f2);
      OperatorSystem lhs = br(br(h, {&g}), {&f1, &f2});
      OperatorSystem g1 = br(g, {&f1}), g2 = br(g, {&f2}), g12 = br(g, {&f1, &f2});
      OperatorSystem rhs = br(h, {&g, &f1, &f2});
      rhs.add_system(br(h, {&g1, &f2}));
      rhs.add_system(br(h, {&g12}));
      rhs.add_system(br(h, {&f1, &g, &f2}), sgn(dg * d1));
      rhs.add_system(br(h, {&f1, &g2}), sgn(dg * d1));
      rhs.add_system(br(h, {&f1, &f2, &g}), sgn(dg * (d1 + d2)));
      brace2.zero(lhs, rhs, t);
    }
    {
      OperatorSystem f = rnd(D(rng), false), g = rnd(D(rng), false);
      skew.zero(bracket(f, g), bracket(g, f).scaled(-sgn(deg(f) * deg(g))), t);
    }
    {
      OperatorSystem f = rnd(D(rng), false, 2), g = rnd(D(rng), false, 2), h = rnd(D(rng), false, 2);
      OperatorSystem lhs = bracket(f, bracket(g, h));
      OperatorSystem rhs = add(bracket(bracket(f, g), h), bracket(g, bracket(f, h)), sgn(deg(f) * deg(g)));
      jacobi.zero(lhs, rhs, t);
    }
    {
      OperatorSystem f = rnd(D(rng), false, 2), g = rnd(D(rng), false, 2);
      OperatorSystem lhs = hochschild_delta(m, bracket(f, g));
      OperatorSystem rhs = add(bracket(hochschild_delta(m, f), g), bracket(f, hochschild_delta(m, g)), sgn(deg(f)));
      leibniz.zero(lhs, rhs, t);
    }
    {
      OperatorSystem f = rnd(D(rng), true);
      OperatorSystem d2 = hochschild_delta(m, hochschild_delta(m, f));
      dd.zero(d2, OperatorSystem(B, cutoff), t);
    }
    {
      OperatorSystem f = rnd(D(rng), true), g = rnd(D(rng), true);
      auto v1 = rcc_violations(hochschild_delta(m, f));
      auto v2 = rcc_violations(cup(m, f, g));
      closure.record(v1.empty() && v2.empty(),
                     "trial " + std::to_string(t) + ": " + (v1.empty() ? (v2.empty() ? "" : v2.front()) : v1.front()));
    }
    {
      OperatorSystem f = rnd(D(rng), true);
      unit.zero(cup(m, e, f), f, t);
      unit.zero(cup(m, f, e), f, t);
    }
    {
      OperatorSystem f = rnd(D(rng), true, 2), g = rnd(D(rng), true, 2), h = rnd(D(rng), true, 2);
      const int df = deg(f), dg = deg(g);
      OperatorSystem lhs = add(cup(m, cup(m, f, g), h), cup(m, f, cup(m, g, h)), Rational(-1)).scaled(sgn(dg));
      OperatorSystem Df = hochschild_delta(m, f), Dg = hochschild_delta(m, g), Dh = hochschild_delta(m, h);
      OperatorSystem rhs = br(m, {&Df, &g, &h});
      rhs.add_system(br(m, {&f, &Dg, &h}), sgn(df));
      rhs.add_system(br(m, {&f, &g, &Dh}), sgn(df + dg));
      rhs.add_system(hochschild_delta(m, br(m, {&f, &g, &h})));
      assoc.zero(lhs, rhs, t);
    }
  }
  dunit.zero(hochschild_delta(m, e), OperatorSystem(B, cutoff), 0);
  return {"ainf", {mm.c, brace1.c, brace2.c, skew.c, jacobi.c, leibniz.c, dd.c, closure.c, unit.c, dunit.c, assoc.c}};
}

constexpr double kTol = 1e-8;

std::string show(const NovikovScalar& a) { return a.str_with_order(); }

struct ScalarChecker : Checker {
  using Checker::Checker;
  void same(const NovikovScalar& a, const NovikovScalar& b, int trial) {
    record(a.approx_equal(b, kTol), "trial " + std::to_string(trial) + ": " + show(a) + " vs " + show(b));
  }
  void same(const LaurentSeries& a, const LaurentSeries& b, int trial) {
    record(a.approx_equal(b, kTol), "trial " + std::to_string(trial) + ": " + a.str() + " vs " + b.str());
  }
};

SuiteReport novikov_suite(std::uint64_t seed, const Rational& cutoff, int trials) {
  std::mt19937_64 rng(seed);
  auto rnd = [&] { return random_scalar(rng, 3, Rational(-2), Rational(2)); };
  auto pos = [&] { return random_scalar(rng, 3, Rational(1, 12), Rational(2)); };
  ScalarChecker add_c("a + b = b + a"), add_a("(a + b) + c = a + (b + c)"), mul_c("ab = ba"),
      mul_a("(ab)c = a(bc)"), dist("a(b + c) = ab + ac"), inv("a inv(a) = 1"), val_m("val(ab) = val a + val b"),
      ultra("val(a + b) >= min(val a, val b)"), expo("exp(p + q) = exp(p) exp(q)"),
      pui("puiseux roots of products of known linear factors"), pres("p(r) vanishes at every recovered root");
  const Rational target = cutoff + Rational(2);
  std::uniform_int_distribution<int> deg(1, 5);
  for (int t = 0; t < trials; ++t) {
    NovikovScalar a = rnd(), b = rnd(), c = rnd();
    add_c.same(a + b, b + a, t);
    add_a.same((a + b) + c, a + (b + c), t);
    mul_c.same(a * b, b * a, t);
    mul_a.same((a * b) * c, a * (b * c), t);
    dist.same(a * (b + c), a * b + a * c, t);
    inv.same((a * invert(a, target)).truncate(RatInf(cutoff)), NovikovScalar(1.0).truncate(RatInf(cutoff)), t);
    val_m.record(valuation(a * b) == RatInf(valuation(a).value() + valuation(b).value()),
                 "trial " + std::to_string(t) + ": " + show(a) + ", " + show(b));
    NovikovScalar s = a + b;
    ultra.record(!s.has_terms() || valuation(s) >= min(valuation(a), valuation(b)),
                 "trial " + std::to_string(t) + ": " + show(a) + ", " + show(b));
    NovikovScalar p = pos(), q = pos();
    expo.same(exp_scalar(p + q, cutoff), (exp_scalar(p, cutoff) * exp_scalar(q, cutoff)).truncate(RatInf(cutoff)), t);
    RootSample rs = random_root_polynomial(rng, deg(rng));
    try {
      auto roots = puiseux_roots(rs.poly, cutoff);
      pui.record(multiset_distance(rs.roots, roots, kTol) >= 0, "trial " + std::to_string(t) + ": degree " +
                                                                    std::to_string(rs.poly.degree()));
      bool ok = true;
      std::string bad;
      for (const auto& r : roots) {
        NovikovScalar v = rs.poly.evaluate(r);
        const RatInf vl = v.has_terms() ? valuation(v) : RatInf::infinity();
        if (v.has_terms() && std::abs(v.terms().front().coeff) > kTol && vl < RatInf(cutoff - Rational(3))) {
          ok = false;
          bad = show(v);
        }
      }
      pres.record(ok, "trial " + std::to_string(t) + ": residual " + bad);
    } catch (const Error& e) {
      pui.record(false, "trial " + std::to_string(t) + ": " + e.what());
      pres.record(false, "trial " + std::to_string(t) + ": " + e.what());
    }
  }
  return {"novikov", {add_c.c, add_a.c, mul_c.c, mul_a.c, dist.c, inv.c, val_m.c, ultra.c, expo.c, pui.c, pres.c}};
}

SuiteReport series_suite(std::uint64_t seed, const Rational& cutoff, int trials) {
  std::mt19937_64 rng(seed);
  const int n = 2;
  auto rnd = [&] { return random_series(rng, n, 4, Rational(-1), cutoff); };
  auto pos = [&] { return random_series(rng, n, 3, Rational(1, 4), cutoff); };
  ScalarChecker comm("fg = gf"), assoc("(fg)h = f(gh)"), dist("f(g + h) = fg + fh"), leib("D(fg) = D(f)g + fD(g)"),
      lin("D_{a theta + b theta'} = a D_theta + b D_theta'"), expo("exp(f + g) = exp(f) exp(g)"),
      ev("evaluate(fg, y) = evaluate(f, y) evaluate(g, y)"), inv("f^-1 f = 1 for a dominant monomial");
  std::uniform_int_distribution<int> small(-2, 2);
  for (int t = 0; t < trials; ++t) {
    LaurentSeries f = rnd(), g = rnd(), h = rnd();
    comm.same(f * g, g * f, t);
    assoc.same((f * g) * h, f * (g * h), t);
    dist.same(f * (g + h), f * g + f * h, t);
    const int i = t % n;
    leib.same(log_derivative(f * g, i), log_derivative(f, i) * g + f * log_derivative(g, i), t);
    const Rational a(small(rng)), b(small(rng));
    lin.same(log_derivative(f, {a, b}),
             log_derivative(f, 0).scale(NovikovScalar(a)) + log_derivative(f, 1).scale(NovikovScalar(b)), t);
    LaurentSeries p = pos(), q = pos();
    expo.same(exp_series(p + q), exp_series(p) * exp_series(q), t);
    TorusPoint y = random_unit_point(rng, n);
    ev.same(evaluate(f * g, y, cutoff - Rational(2)),
            (evaluate(f, y, cutoff) * evaluate(g, y, cutoff)).truncate(RatInf(cutoff - Rational(2))), t);
    LaurentSeries d = LaurentSeries::monomial(n, {small(rng), small(rng)}, random_scalar(rng, 1, Rational(0), Rational(0)))
                          .with_cutoff(cutoff + Rational(2));
    LaurentSeries u = d * (LaurentSeries::constant(n, NovikovScalar(1.0)).with_cutoff(cutoff + Rational(2)) + pos());
    inv.same((series_pow(u, -1) * u).with_cutoff(cutoff), LaurentSeries::constant(n, NovikovScalar(1.0)).with_cutoff(cutoff), t);
  }
  return {"series", {comm.c, assoc.c, dist.c, leib.c, lin.c, expo.c, ev.c, inv.c}};
}

SuiteReport floer_suite(std::uint64_t seed, const Rational& cutoff, int trials) {
  std::mt19937_64 rng(seed);
  ExteriorAlgebra alg(2, false);
  const auto classes = clifford_cp2_classes(Rational(3));
  OperatorSystem m = strict_model(alg, classes, cutoff);
  const GradedBasis& B = *alg.basis();
  if (inject_fault()) {
    const LabelClass b1{classes[0].energy, 2, classes[0].boundary};
    m.add(1, b1, {alg.generator(0)}, m.apply(1, b1, {alg.generator(0)}), Rational(-2));
  }
  Checker wcheck("W = sum T^E(beta) Y^dbeta and Q = 0"), sq("m1^y m1^y = 0"),
      div("m1^y(theta_i) = D_i W(y) 1"), hf0("HF = 0 at non-critical points, both pivot orders"),
      hf1("HF > 0 at critical points, both pivot orders"), jac("m1(x) = sum D_i W R_i");
  LaurentSeries expected(2, cutoff);
  for (const auto& c : classes)
    if (c.energy < cutoff) expected.add_term(c.boundary, NovikovScalar::monomial(1.0, c.energy));
  Superpotential sp = superpotential(m);
  wcheck.record(sp.W.approx_equal(expected, kTol) && sp.q_zero(), "W = " + sp.W.str());
  const LaurentSeries& W = sp.W;
  const Rational target = cutoff;
  const int n1 = B.dim();
  auto trial = [](int t) { return "trial " + std::to_string(t) + ": "; };
  for (int t = 0; t < trials; ++t) {
    TorusPoint y = random_unit_point(rng, 2);
    ScalarMatrix M = m1_matrix(m, y, target);
    bool ok = true;
    for (int r = 0; r < n1 && ok; ++r)
      for (int c = 0; c < n1 && ok; ++c) {
        NovikovScalar s;
        for (int k = 0; k < n1; ++k) s += M[r][k] * M[k][c];
        if (s.has_terms() && std::abs(s.terms().front().coeff) > kTol) ok = false;
      }
    sq.record(ok, trial(t) + "nonzero entry of m1^y squared");
    for (int i = 0; i < 2; ++i) {
      const int g = alg.generator(i);
      NovikovScalar dw = evaluate(log_derivative(W, i), y, target);
      bool good = true;
      for (int r = 0; r < n1; ++r) {
        NovikovScalar want = r == B.unit() ? dw : NovikovScalar();
        if (!M[r][g].approx_equal(want, kTol)) good = false;
      }
      div.record(good, trial(t) + "generator " + std::to_string(i));
    }
    try {
      const int a = hf_dimension(m, y, {Rational(1), PivotOrder::MinValuation});
      const int b = hf_dimension(m, y, {Rational(1), PivotOrder::ColumnScan});
      hf0.record(a == 0 && b == 0, trial(t) + "HF " + std::to_string(a) + ", " + std::to_string(b));
    } catch (const Error& e) {
      hf0.record(false, trial(t) + e.what());
    }
  }
  CriticalSystem sys(W);
  for (int s = 0; s < 3; ++s) {
    const Complex z = std::polar(1.0, 2 * std::numbers::pi * s / 3);
    try {
      TorusPoint y = newton_lift(sys, Seed{{Rational(0), Rational(0)}, {z, z}}, target);
      const int a = hf_dimension(m, y, {Rational(1), PivotOrder::MinValuation});
      const int b = hf_dimension(m, y, {Rational(1), PivotOrder::ColumnScan});
      hf1.record(a > 0 && a == b, "critical point " + std::to_string(s) + ": HF " + std::to_string(a) + ", " +
                                      std::to_string(b));
    } catch (const Error& e) {
      hf1.record(false, "critical point " + std::to_string(s) + ": " + e.what());
    }
  }
  for (int x = 0; x < n1; ++x) {
    try {
      auto R = jacobian_divide(m, x, cutoff);
      const double r = jacobian_division_residual(m, x, R, cutoff);
      jac.record(r <= kTol, B.name(x) + ": residual " + std::to_string(r));
    } catch (const Error& e) {
      jac.record(false, B.name(x) + ": " + e.what());
    }
  }
  return {"floer", {wcheck.c, sq.c, div.c, hf0.c, hf1.c, jac.c}};
}

SuiteReport wallcross_suite(std::uint64_t seed, const Rational& cutoff, int trials) {
  std::mt19937_64 rng(seed);
  const int n = 2;
  ScalarChecker round("phi^-1 phi f = f"), trans("translation round trip"), addh("phi(f + g) = phi f + phi g"),
      mulh("phi(fg) = phi(f) phi(g)"), ev("evaluate(phi f, y) = evaluate(f, phi(y))");
  Checker unit("phi preserves U_Lambda^n when lambda = 0"), dideal("D-ideal correspondence at points"),
      match("phi(phi^-1 W) matches W"), mismatch("perturbed potential is rejected");
  auto trial = [](int t) { return "trial " + std::to_string(t) + ": "; };
  for (int t = 0; t < trials; ++t) {
    CoordinateChange chg = random_change(rng, n, true, cutoff);
    CoordinateChange tr = random_change(rng, n, false, cutoff);
    for (auto& f : tr.F) f = LaurentSeries(n, cutoff);
    LaurentSeries f = random_series(rng, n, 4, Rational(0), cutoff);
    LaurentSeries g = random_series(rng, n, 4, Rational(0), cutoff);
    try {
      CoordinateChange inv = invert_change(chg, cutoff);
      round.same(apply_change(inv, apply_change(chg, f)), f, t);
      // |<alpha, lambda>| <= 4 for |alpha_i| <= 2, |lambda_i| <= 1
      const Rational wide = cutoff + Rational(4);
      LaurentSeries fw = random_series(rng, n, 4, Rational(0), wide);
      for (auto& c : tr.F) c = LaurentSeries(n, wide);
      trans.same(apply_change(invert_change(tr, wide), apply_change(tr, fw)).with_cutoff(cutoff), fw.with_cutoff(cutoff), t);
      addh.same(apply_change(chg, f + g), apply_change(chg, f) + apply_change(chg, g), t);
      mulh.same(apply_change(chg, f * g), apply_change(chg, f) * apply_change(chg, g), t);
      TorusPoint y = random_unit_point(rng, n);
      TorusPoint yt = push_point(chg, y, cutoff);
      ev.same(evaluate(apply_change(chg, f), y, cutoff), evaluate(f, yt, cutoff), t);
      bool units = true;
      for (const auto& c : yt.coords) units = units && c.has_terms() && valuation(c) == RatInf(Rational(0));
      unit.record(units, trial(t) + "image leaves the unit torus");
      LaurentSeries Wt = apply_change(inv, f);
      const double dd = d_ideal_defect(chg, Wt, y, cutoff);
      dideal.record(dd <= kTol, trial(t) + "defect " + std::to_string(dd));
      PotentialMatch pm = verify_potential_match(f, Wt, chg);
      match.record(pm.match, trial(t) + pm.offending);
      LaurentSeries bad = Wt;
      bad.add_term({1, 0}, NovikovScalar::monomial(1.0, cutoff / Rational(2)));
      mismatch.record(!verify_potential_match(f, bad, chg).match, trial(t) + "accepted");
    } catch (const Error& e) {
      round.record(false, trial(t) + e.what());
    }
  }
  return {"wallcross", {round.c, trans.c, addh.c, mulh.c, ev.c, unit.c, dideal.c, match.c, mismatch.c}};
}

}  // namespace

std::vector<std::string> selftest_suites() { return {"novikov", "series", "ainf", "floer", "wallcross"}; }

SuiteReport run_selftest(const std::string& suite, std::uint64_t seed, const Rational& cutoff, int trials) {
  if (suite == "ainf") return ainf_suite(seed, cutoff, trials);
  if (suite == "novikov") return novikov_suite(seed, cutoff, trials);
  if (suite == "series") return series_suite(seed, cutoff, trials);
  if (suite == "floer") return floer_suite(seed, cutoff, trials);
  if (suite == "wallcross") return wallcross_suite(seed, cutoff, trials);
  throw Error(ErrorCode::UnknownName, "no self-test suite " + suite);
}

}  // namespace nonarch
