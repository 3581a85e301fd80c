// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nonarch/ainf.hpp"
#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/fibration.hpp"
#include "nonarch/floer.hpp"
#include "nonarch/models.hpp"
#include "nonarch/quantum.hpp"
#include "nonarch/selftest.hpp"
#include "nonarch/wallcross.hpp"

using namespace nonarch;

namespace {

constexpr double kCoeffTol = 1e-9;
constexpr double kRootTol = 1e-8;
constexpr double kFibrationTol = 1e-9;
constexpr double kFolkloreSeconds = 1.0;
constexpr double kFibrationSeconds = 5.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Complex zeta(int s, int n) { return std::polar(1.0, 2 * std::numbers::pi * s / n); }

NovikovScalar mono(Complex c, const Rational& e) { return NovikovScalar::monomial(c, e); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Compares terms below `order`: every exponent that carries a coefficient
// above tol on either side must appear on both, with coefficients within tol,
// and both sides must be known at least to `order`.
bool termwise(const NovikovScalar& got, const NovikovScalar& want, const Rational& order, double tol,
              std::string* why = nullptr) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (got.order() < RatInf(order)) return fail(got.str_with_order() + " is not known to " + order.str());
  if (want.order() < RatInf(order)) return fail(want.str_with_order() + " is not known to " + order.str());
  auto lead = [&](const NovikovScalar& a) -> std::optional<Rational> {
    for (const auto& t : a.terms())
      if (t.exponent < order && std::abs(t.coeff) > tol) return t.exponent;
    return std::nullopt;
  };
  if (lead(got) != lead(want)) return fail("leading exponents differ: " + got.str() + " vs " + want.str());
  for (const auto* side : {&got, &want})
    for (const auto& t : side->terms()) {
      if (!(t.exponent < order)) continue;
      if (std::abs(got.coeff_at(t.exponent) - want.coeff_at(t.exponent)) > tol)
        return fail("T^" + t.exponent.str() + ": " + got.str() + " vs " + want.str());
    }
  return true;
}

// Bijective matching under `termwise`, by backtracking.
bool multiset_match(const std::vector<NovikovScalar>& a, const std::vector<NovikovScalar>& b, const Rational& order,
                    double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || !termwise(a[i], b[j], order, tol)) continue;
      used[j] = true;
      if (go(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return go(0);
}

// x0 and y are lifted to relative precision `order`; x1 = (1 + y)/x0 is
// compared to whatever precision the product carries.
bool point_matches(const NovikovScalar& x0, const NovikovScalar& x1, const NovikovScalar& y,
                   const std::vector<NovikovScalar>& want, const Rational& order) {
  return termwise(x0, want[0], order + want[0].valuation().value(), kCoeffTol) &&
         termwise(x1, want[1], x1.order().value(), kCoeffTol) &&
         termwise(y, want[2], order + want[2].valuation().value(), kCoeffTol);
}

std::string show(const std::vector<NovikovScalar>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "}";
}

// Product x0 x1 = 1 + y on the chart.
NovikovScalar mirror_x1(const NovikovScalar& x0, const NovikovScalar& y, const Rational& order) {
  return (NovikovScalar(1.0) + y) * invert(x0, order);
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome fail(std::string s) { return {false, std::move(s)}; }

// ---- criteria

Outcome cp2_folklore() {
  const Rational E(1), order(4);
  auto t0 = Clock::now();
  LaurentSeries W = builtin_potential("cp2_chart", {E}, order + Rational(3));
  CriticalSystem sys(W);
  std::vector<TorusPoint> pts;
  for (const auto& s : builtin_seeds("cp2_chart", {E})) pts.push_back(newton_lift(sys, s, order));
  auto values = critical_values(W, pts, order);
  auto eig = c1_eigenvalues(qh_projective(2, E), order);
  FolkloreReport rep = folklore_match(values, eig, kCoeffTol);
  const double elapsed = seconds_since(t0);

  if (pts.size() != 3) return fail(std::to_string(pts.size()) + " critical points");
  std::vector<bool> seen(3, false);
  for (const auto& y : pts) {
    const NovikovScalar x1 = mirror_x1(y.coords[0], y.coords[1], order);
    bool found = false;
    for (int s = 0; s < 3 && !found; ++s) {
      std::vector<NovikovScalar> want{mono(1.0 / zeta(s, 3), -E / Rational(3)), mono(2.0 * zeta(s, 3), E / Rational(3)),
                                      NovikovScalar(1.0)};
      if (!seen[s] && point_matches(y.coords[0], x1, y.coords[1], want, order)) found = seen[s] = true;
    }
    if (!found) return fail("unexpected critical point " + show(y.coords));
  }
  std::vector<NovikovScalar> expect;
  for (int s = 0; s < 3; ++s) expect.push_back(mono(3.0 * zeta(s, 3), E / Rational(3)));
  if (!multiset_match(values, expect, order, kCoeffTol)) return fail("critical values " + show(values));
  if (!multiset_match(eig, expect, order, kCoeffTol)) return fail("c1 eigenvalues " + show(eig));
  if (!rep.success()) return fail("folklore_match reports unmatched values");
  if (elapsed >= kFolkloreSeconds) return fail("took " + num(elapsed) + " s");
  return {true, "3 points, values 3T^(1/3)zeta^s, " + num(elapsed) + " s"};
}

Outcome p1xp1_folklore() {
  const Rational E1(1), E2(3, 2), order(4);
  auto t0 = Clock::now();
  LaurentSeries W = builtin_potential("p1xp1_chart", {E1, E2}, order + Rational(3));
  CriticalSystem sys(W);
  std::vector<TorusPoint> pts;
  for (const auto& s : builtin_seeds("p1xp1_chart", {E1, E2})) pts.push_back(newton_lift(sys, s, order));
  auto values = critical_values(W, pts, order);
  auto eig = c1_eigenvalues(qh_tensor(qh_projective(1, E1), qh_projective(1, E2)), order);
  FolkloreReport rep = folklore_match(values, eig, kCoeffTol);
  const double elapsed = seconds_since(t0);

  if (pts.size() != 4) return fail(std::to_string(pts.size()) + " critical points");
  // x0 = s T^{-E2/2}, y = s t T^{(E1-E2)/2}, x1 = s T^{E2/2} + t T^{E1/2}
  const Rational h1 = E1 / Rational(2), h2 = E2 / Rational(2);
  std::vector<bool> seen(4, false);
  for (const auto& y : pts) {
    const NovikovScalar x1 = mirror_x1(y.coords[0], y.coords[1], order);
    bool found = false;
    for (int k = 0; k < 4 && !found; ++k) {
      const double s = k & 1 ? -1.0 : 1.0, t = k & 2 ? -1.0 : 1.0;
      std::vector<NovikovScalar> want{mono(s, -h2), mono(s, h2) + mono(t, h1), mono(s * t, h1 - h2)};
      if (!seen[k] && point_matches(y.coords[0], x1, y.coords[1], want, order)) found = seen[k] = true;
    }
    if (!found) return fail("unexpected critical point " + show(y.coords));
  }
  std::vector<NovikovScalar> expect;
  for (double s : {1.0, -1.0})
    for (double t : {1.0, -1.0}) expect.push_back(mono(2 * s, h1) + mono(2 * t, h2));
  if (!multiset_match(values, expect, order, kCoeffTol)) return fail("critical values " + show(values));
  if (!multiset_match(eig, expect, order, kCoeffTol)) return fail("c1 eigenvalues " + show(eig));
  if (!rep.success()) return fail("folklore_match reports unmatched values");
  if (elapsed >= kFolkloreSeconds) return fail("took " + num(elapsed) + " s");
  return {true, "4 points, values +-2T^(1/2) +-2T^(3/4), " + num(elapsed) + " s"};
}

Outcome cpn_eigenvalues() {
  const Rational order(4);
  for (int n = 1; n <= 6; ++n) {
    auto ev = c1_eigenvalues(qh_projective(n, Rational(1)), order);
    if (static_cast<int>(ev.size()) != n + 1)
      return fail("CP^" + std::to_string(n) + ": " + std::to_string(ev.size()) + " eigenvalues");
    std::vector<NovikovScalar> expect;
    for (int s = 0; s <= n; ++s) expect.push_back(mono(double(n + 1) * zeta(s, n + 1), Rational(1, n + 1)));
    if (!multiset_match(ev, expect, order, kCoeffTol)) return fail("CP^" + std::to_string(n) + ": " + show(ev));
  }
  return {true, "n = 1..6"};
}

Outcome puiseux_random() {
  const Rational order(3);
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> deg(1, 5);
  for (int t = 0; t < 50; ++t) {
    RootSample rs = random_root_polynomial(rng, deg(rng));
    auto roots = puiseux_roots(rs.poly, order);
    std::vector<NovikovScalar> truth;
    for (const auto& r : rs.roots) truth.push_back(r.truncate(RatInf(order)));
    if (!multiset_match(roots, truth, order, kRootTol))
      return fail("trial " + std::to_string(t) + ": got " + show(roots) + ", roots " + show(truth));
  }
  return {true, "50 polynomials of degree <= 5"};
}

Outcome ainf_identities() {
  SuiteReport r = run_selftest("ainf", 42, Rational(2), 20);
  const std::vector<std::string> required{"h{g}{f} = h{g{f}} + h{g,f} + (-1)^{|g||f|} h{f,g}",
                                          "h{g}{f1,f2} expansion",
                                          "graded Jacobi",
                                          "graded Leibniz",
                                          "delta delta = 0 on rCC",
                                          "rCC closure of delta and cup",
                                          "e cup f = f cup e = f",
                                          "cup associativity up to delta-exact"};
  for (const auto& name : required) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const SuiteCheck& c) { return c.identity == name; });
    if (it == r.checks.end()) return fail("missing identity " + name);
    if (it->trials < 20) return fail(name + ": only " + std::to_string(it->trials) + " trials");
  }
  for (const auto& c : r.checks)
    if (!c.ok()) return fail(c.identity + ": " + c.counterexample);
  return {true, std::to_string(r.checks.size()) + " identities, 20 trials each"};
}

// The deformed torus chain model and its minimal model, shared by two criteria.
struct Deformed {
  DeformedChainModel dm;
  HplResult h;
};

const Deformed& deformed() {
  static const Deformed d = [] {
    DeformedChainModel dm = deformed_chain_model(clifford_cp2_classes(Rational(3)), Rational(1), Rational(3), 4);
    HplResult h = hpl_minimal_model(dm.m_chain, dm.con, {3, 4});
    return Deformed{std::move(dm), std::move(h)};
  }();
  return d;
}

// T(Y1 + Y2 + 1/(Y1Y2)), the potential of the Clifford classes with E = 3
LaurentSeries clifford_w(const Rational& cutoff) {
  LaurentSeries W(2, cutoff);
  for (Exponent a : {Exponent{1, 0}, Exponent{0, 1}, Exponent{-1, -1}}) W.add_term(a, mono(1.0, Rational(1)));
  return W;
}

Outcome hpl_correctness() {
  const Deformed& d = deformed();
  AinfReport a = check_ainf(d.h.m_min);
  if (!a.ok) return fail("m_min: " + a.summary());
  AinfReport l = check_left_inverse(d.h.p_morph, d.h.i_morph);
  if (!l.ok) return fail("p<>i: " + l.summary());
  AinfReport m = check_morphism(d.dm.m_chain, d.h.i_morph, d.h.m_min);
  if (!m.ok) return fail("i: " + m.summary());
  if (d.h.m_min.cutoff() != Rational(3)) return fail("m_min cutoff " + d.h.m_min.cutoff().str());
  return {true, "cutoff 3, m_min dimension " + std::to_string(d.h.m_min.source()->dim())};
}

Outcome divisor_and_division() {
  const Rational cut(3);
  ExteriorAlgebra alg(2, false);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), cut);
  const LaurentSeries W = clifford_w(cut);
  const int n = alg.dim(), unit = alg.basis()->unit();
  std::mt19937_64 rng(77);
  std::vector<TorusPoint> pts;
  for (int t = 0; t < 20; ++t) pts.push_back(random_unit_point(rng, 2));
  std::vector<ScalarMatrix> m1;
  for (const auto& y : pts) m1.push_back(m1_matrix(m, y, cut));

  for (std::size_t t = 0; t < pts.size(); ++t)
    for (int i = 0; i < 2; ++i) {
      const NovikovScalar dw = evaluate(log_derivative(W, i), pts[t], cut);
      for (int r = 0; r < n; ++r) {
        const NovikovScalar want = r == unit ? dw : NovikovScalar::truncated_zero(cut);
        std::string why;
        if (!termwise(m1[t][r][alg.generator(i)], want, cut, kCoeffTol, &why))
          return fail("m1^y(theta_" + std::to_string(i + 1) + ") at point " + std::to_string(t) + ": " + why);
      }
    }

  for (int x = 0; x < n; ++x) {
    auto R = jacobian_divide(m, x, cut);
    const double res = jacobian_division_residual(m, x, R, cut);
    if (res > kCoeffTol) return fail("basis vector " + std::to_string(x) + ": residual " + num(res));
    // pointwise: m1^y(x) = sum_i D_i W(y) R_i(y)
    for (std::size_t t = 0; t < pts.size(); ++t) {
      std::vector<NovikovScalar> rhs(n, NovikovScalar::truncated_zero(cut));
      for (int i = 0; i < 2; ++i) {
        const NovikovScalar dw = evaluate(log_derivative(W, i), pts[t], cut);
        for (const auto& [r, f] : R[i]) rhs[r] += (dw * evaluate(f, pts[t], cut)).truncate(RatInf(cut));
      }
      for (int r = 0; r < n; ++r) {
        std::string why;
        if (!termwise(m1[t][r][x], rhs[r], cut, kCoeffTol, &why))
          return fail("division of basis vector " + std::to_string(x) + " at point " + std::to_string(t) + ": " + why);
      }
    }
  }
  return {true, "20 points, " + std::to_string(n) + " basis vectors, cutoff 3"};
}

Outcome hf_dichotomy() {
  const Rational cut(3);
  ExteriorAlgebra alg(2, false);
  OperatorSystem m = strict_model(alg, clifford_cp2_classes(Rational(3)), cut);
  CriticalSystem sys(clifford_w(cut));
  const RankOptions scan{Rational(1), PivotOrder::ColumnScan};
  for (int s = 0; s < 3; ++s) {
    TorusPoint y = newton_lift(sys, Seed{{Rational(0), Rational(0)}, {zeta(s, 3), zeta(s, 3)}}, cut);
    const int a = hf_dimension(m, y), b = hf_dimension(m, y, scan);
    if (a <= 0 || a != b)
      return fail("critical point " + std::to_string(s) + ": HF " + std::to_string(a) + ", " + std::to_string(b));
  }
  std::mt19937_64 rng(91);
  for (int t = 0; t < 20; ++t) {
    TorusPoint y = random_unit_point(rng, 2);
    if (residual_vanishes(critical_residual(sys, y, cut), cut)) return fail("random point " + std::to_string(t) + " is critical");
    const int a = hf_dimension(m, y), b = hf_dimension(m, y, scan);
    if (a != 0 || b != 0)
      return fail("random point " + std::to_string(t) + ": HF " + std::to_string(a) + ", " + std::to_string(b));
  }
  return {true, "3 critical points, 20 random points, both pivot orders"};
}

Outcome closed_open() {
  const Deformed& d = deformed();
  CoReport r = co_c1(d.h, d.dm.m_chain);
  const Rational cut(3);
  const LaurentSeries W = clifford_w(cut);
  if (r.W.max_distance(W) > kCoeffTol) return fail("W of the minimal model is " + r.W.str());
  const int unit = d.dm.small.basis()->unit();
  for (int x = 0; x < d.dm.small.dim(); ++x) {
    auto it = r.co.find(x);
    const LaurentSeries got = it == r.co.end() ? LaurentSeries(2, cut) : it->second;
    const LaurentSeries want = x == unit ? W : LaurentSeries(2, cut);
    if (got.cutoff() < cut) return fail("component " + std::to_string(x) + " known only below " + got.cutoff().str());
    if (got.max_distance(want) > kCoeffTol)
      return fail("component " + std::to_string(x) + ": " + got.str() + " vs " + want.str());
  }
  if (!r.match) return fail("co_c1 reports no match, residual " + num(r.residual));
  return {true, "CO(c1) = " + r.W.str() + " * 1"};
}

Outcome wall_crossing() {
  const Rational cut(5), order(4);
  LaurentSeries W = builtin_potential("cp2_chart", {Rational(1)}, cut);
  CoordinateChange chg = CoordinateChange::focus_focus(Rational(1, 2), cut);
  LaurentSeries Wt = apply_change(invert_change(chg, cut), W);
  PotentialMatch pm = verify_potential_match(W, Wt, chg);
  if (!pm.match) return fail("potential mismatch " + pm.offending);
  CriticalSystem sys(W), sys_t(Wt);
  for (const auto& seed : builtin_seeds("cp2_chart", {Rational(1)})) {
    TorusPoint y = newton_lift(sys, seed, order);
    TransportReport r = transport_critical(chg, y, W, Wt, order);
    if (!r.critical || !r.critical_tilde) return fail("transported point is not critical: " + show(r.y_tilde.coords));
    // recomputed directly on W~
    for (const auto& v : critical_residual(sys_t, r.y_tilde, order))
      if (v.has_terms() && v.valuation() < RatInf(order)) return fail("residual " + v.str() + " below T^" + order.str());
    const NovikovScalar a = evaluate(W, y, order), b = evaluate(Wt, r.y_tilde, order);
    std::string why;
    if (!termwise(a, b, order, kCoeffTol, &why)) return fail("critical values differ: " + why);
  }
  return {true, "focus-focus a = 1/2, series cutoff 5, residuals to T^4"};
}

// j(q) from the definition, with the default psi written out again
std::array<double, 3> j_oracle(double q1, double q2) {
  auto psi = [](double a, double b) { return b / 2 + std::sqrt(a * a + b * b + 1) / 2; };
  const double m = std::min(0.0, q1);
  if (q2 >= 0) return {-psi(q1, q2) + m, psi(q1, 0), q1};
  return {-psi(q1, 0) + m, psi(q1, q2), q1};
}

Outcome fibration() {
  const int count = 1000;
  const std::uint64_t seed = 42;
  auto t0 = Clock::now();
  auto samples = fibration_sample(default_psi(), count, seed);
  const double elapsed = seconds_since(t0);
  if (static_cast<int>(samples.size()) != count) return fail(std::to_string(samples.size()) + " samples");
  PsiModel psi = default_psi();
  auto pts = sample_mirror_points(count, seed, Rational(8));
  double worst = 0;
  for (int k = 0; k < count; ++k) {
    const MirrorPoint& p = pts[k];
    const Rational v0 = p.x0.valuation().value(), v1 = p.x1.valuation().value(), vy = p.y.valuation().value();
    const NovikovScalar one_plus_y = NovikovScalar(1.0) + p.y;
    if (!one_plus_y.has_terms() || v0 + v1 != one_plus_y.valuation().value())
      return fail("point " + std::to_string(k) + ": valuation identity fails");
    if (!samples[k].valuation_identity) return fail("sample " + std::to_string(k) + " reports a broken identity");
    // F from the valuations
    const double a0 = psi.psi(vy.to_double(), 0);
    const std::array<double, 3> F{std::min(v0.to_double(), -a0 + std::min(0.0, vy.to_double())),
                                  std::min(v1.to_double(), a0), vy.to_double()};
    const Point2 q = solve_f(psi, p);
    const auto J = j_oracle(q[0], q[1]);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(J[i] - F[i]));
    worst = std::max(worst, samples[k].residual);
  }
  if (worst > kFibrationTol) return fail("max |j(f(p)) - F(p)| = " + num(worst));
  if (elapsed >= kFibrationSeconds) return fail("took " + num(elapsed) + " s");
  return {true, "1000 points, max residual " + num(worst) + ", " + num(elapsed) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"CP2 folklore reproduction", cp2_folklore},
      {"CP1xCP1 folklore reproduction", p1xp1_folklore},
      {"CP^n c1 eigenvalues", cpn_eigenvalues},
      {"Puiseux roots of random polynomials", puiseux_random},
      {"A-infinity and Hochschild identities", ainf_identities},
      {"homological perturbation", hpl_correctness},
      {"divisor identity and Jacobian division", divisor_and_division},
      {"Floer cohomology dichotomy", hf_dichotomy},
      {"CO(c1) = W 1", closed_open},
      {"wall-crossing invariance", wall_crossing},
      {"fibration consistency", fibration},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    if (!o.ok) ++failures;
    std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
