#include <algorithm>
#include "nonarch/critical.hpp"

#include <cmath>
#include <numbers>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

LaurentSeries mono(int rank, Exponent a, const Rational& e, const Rational& cutoff, Complex c = 1.0) {
  LaurentSeries s(rank, cutoff);
  s.add_term(a, NovikovScalar::monomial(c, e));
  return s;
}

void need(const std::vector<Rational>& p, std::size_t n, const std::string& name) {
  if (p.size() != n) throw Error(ErrorCode::InvalidArgument, name + " takes " + std::to_string(n) + " parameters");
  for (const auto& x : p)
    if (x.sign() <= 0) throw Error(ErrorCode::InvalidArgument, name + " parameters must be positive");
}

Complex root_of_unity(int s, int n) { return std::polar(1.0, 2 * std::numbers::pi * s / n); }

}  // namespace

LaurentSeries builtin_potential(const std::string& name, const std::vector<Rational>& p, const Rational& cutoff) {
  if (name == "cp2_chart") {
    need(p, 1, name);
    return mono(2, {-1, 0}, Rational(0), cutoff) + mono(2, {-1, 1}, Rational(0), cutoff) +
           mono(2, {2, -1}, p[0], cutoff);
  }
  if (name == "p1xp1_chart") {
    need(p, 2, name);
    return mono(2, {-1, 0}, Rational(0), cutoff) + mono(2, {-1, 1}, Rational(0), cutoff) +
           mono(2, {1, -1}, p[0], cutoff) + mono(2, {1, 0}, p[1], cutoff);
  }
  if (name == "clifford_cpn") {
    if (p.size() != 2 || p[0].sign() <= 0 || p[1].sign() <= 0 || !p[0].is_integer())
      throw Error(ErrorCode::InvalidArgument, "clifford_cpn takes an integer n >= 1 and E > 0");
    const int n = static_cast<int>(p[0].num());
    LaurentSeries W(n, cutoff);
    for (int i = 0; i < n; ++i) {
      Exponent a(n, 0);
      a[i] = 1;
      W += mono(n, a, Rational(0), cutoff);
    }
    W += mono(n, Exponent(n, -1), p[1], cutoff);
    return W;
  }
  throw Error(ErrorCode::UnknownName, "no built-in potential " + name);
}

CriticalSystem::CriticalSystem(LaurentSeries W) : potential(std::move(W)) {
  const int n = potential.rank();
  for (int i = 0; i < n; ++i) derivatives.push_back(log_derivative(potential, i));
  hessian.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hessian[i].push_back(log_derivative(derivatives[i], j));
}

TorusPoint Seed::point() const {
  TorusPoint y;
  for (std::size_t i = 0; i < valuations.size(); ++i)
    y.coords.push_back(NovikovScalar::monomial(leading[i], valuations[i]));
  return y;
}

std::vector<Seed> builtin_seeds(const std::string& name, const std::vector<Rational>& p) {
  std::vector<Seed> out;
  if (name == "cp2_chart") {
    need(p, 1, name);
    for (int s = 0; s < 3; ++s) out.push_back({{-p[0] / Rational(3), Rational(0)}, {root_of_unity(-s, 3), 1.0}});
  } else if (name == "p1xp1_chart") {
    need(p, 2, name);
    Rational v0 = -p[1] / Rational(2), v1 = p[0] / Rational(2) - p[1] / Rational(2);
    for (int sigma : {1, -1})
      for (int tau : {1, -1}) out.push_back({{v0, v1}, {double(sigma), double(sigma * tau)}});
  } else if (name == "clifford_cpn") {
    if (p.size() != 2 || !p[0].is_integer() || p[0].sign() <= 0)
      throw Error(ErrorCode::InvalidArgument, "clifford_cpn takes an integer n >= 1 and E > 0");
    const int n = static_cast<int>(p[0].num());
    for (int s = 0; s <= n; ++s)
      out.push_back({std::vector<Rational>(n, p[1] / Rational(n + 1)),
                     std::vector<Complex>(n, root_of_unity(s, n + 1))});
  } else {
    throw Error(ErrorCode::UnknownName, "no built-in potential " + name);
  }
  return out;
}

std::vector<NovikovScalar> critical_residual(const LaurentSeries& W, const TorusPoint& y, std::optional<Rational> target) {
  if (static_cast<int>(y.coords.size()) != W.rank()) throw Error(ErrorCode::RankMismatch, "point rank");
  std::vector<NovikovScalar> r;
  for (int i = 0; i < W.rank(); ++i) r.push_back(evaluate(log_derivative(W, i), y, target));
  return r;
}

std::vector<NovikovScalar> critical_residual(const CriticalSystem& sys, const TorusPoint& y, const Rational& target) {
  if (static_cast<int>(y.coords.size()) != sys.rank()) throw Error(ErrorCode::RankMismatch, "point rank");
  std::vector<NovikovScalar> r;
  for (const auto& d : sys.derivatives) r.push_back(evaluate(d, y, target));
  return r;
}

bool residual_vanishes(const std::vector<NovikovScalar>& r, const Rational& order) {
  for (const auto& x : r)
    if (x.valuation_bound() < RatInf(order)) return false;
  return true;
}

std::vector<NovikovScalar> novikov_solve(std::vector<std::vector<NovikovScalar>> A, std::vector<NovikovScalar> b,
                                         const Rational& target) {
  const int n = static_cast<int>(A.size());
  std::vector<int> perm(n, -1);
  std::vector<bool> row_used(n, false);
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int r = 0; r < n; ++r) {
      if (row_used[r] || !A[r][c].has_terms()) continue;
      if (pr < 0 || A[r][c].valuation() < A[pr][c].valuation()) pr = r;
    }
    if (pr < 0) throw Error(ErrorCode::SingularLeadingJacobian, "no pivot in column " + std::to_string(c));
    row_used[pr] = true;
    perm[c] = pr;
    NovikovScalar inv = invert(A[pr][c], target);
    for (int r = 0; r < n; ++r) {
      if (r == pr || A[r][c].is_exact_zero()) continue;
      NovikovScalar f = A[r][c] * inv;
      for (int k = c; k < n; ++k) A[r][k] -= f * A[pr][k];
      b[r] -= f * b[pr];
      A[r][c] = NovikovScalar();
    }
  }
  std::vector<NovikovScalar> x(n);
  for (int c = 0; c < n; ++c) x[c] = b[perm[c]] * invert(A[perm[c]][c], target);
  return x;
}

TorusPoint newton_lift(const CriticalSystem& sys, const TorusPoint& start, const Rational& order) {
  const int n = sys.rank();
  if (static_cast<int>(start.coords.size()) != n) throw Error(ErrorCode::RankMismatch, "seed rank");
  TorusPoint y = start;
  // leading Hessian check and working precision
  std::vector<std::vector<NovikovScalar>> H(n, std::vector<NovikovScalar>(n));
  Rational hv(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      H[i][j] = evaluate(sys.hessian[i][j], y, order);
      if (H[i][j].has_terms()) hv = std::max(hv, H[i][j].valuation().value());
    }
  const Rational work = order + Rational(2) * hv + Rational(1);
  auto step = [&](std::vector<NovikovScalar> F) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) H[i][j] = evaluate(sys.hessian[i][j], y, work);
    for (auto& f : F) f = -f;
    auto eps = novikov_solve(H, F, work);
    for (int j = 0; j < n; ++j) {
      RatInf v = y.coords[j].valuation_bound();
      NovikovScalar next = y.coords[j] + y.coords[j] * eps[j];
      if (!next.has_terms() || next.valuation() != y.coords[j].valuation())
        throw Error(ErrorCode::NoConvergenceAtOrder, "Newton step leaves the torus chart of the seed");
      y.coords[j] = v.is_inf() ? next : next.truncate(RatInf(v.value() + work));
    }
  };
  for (int it = 0; it < 48; ++it) {
    auto F = critical_residual(sys, y, work);
    if (residual_vanishes(F, order)) {
      // the point error is only just past order here; one more step squares it
      if (std::any_of(F.begin(), F.end(), [](const NovikovScalar& f) { return f.has_terms(); })) {
        step(F);
        if (!residual_vanishes(critical_residual(sys, y, work), order))
          throw Error(ErrorCode::NoConvergenceAtOrder, "polishing step lost order " + order.str());
      }
      TorusPoint z = y;
      for (auto& c : z.coords)
        if (c.has_terms()) c = c.truncate(RatInf(c.valuation().value() + order));
      return residual_vanishes(critical_residual(sys, z, work), order) ? z : y;
    }
    step(F);
  }
  throw Error(ErrorCode::NoConvergenceAtOrder, "Newton iteration did not reach order " + order.str());
}

TorusPoint newton_lift(const CriticalSystem& sys, const Seed& seed, const Rational& order) {
  return newton_lift(sys, seed.point(), order);
}

std::vector<NovikovScalar> critical_values(const LaurentSeries& W, const std::vector<TorusPoint>& points,
                                           const Rational& order) {
  std::vector<NovikovScalar> out;
  for (const auto& y : points) {
    if (!residual_vanishes(critical_residual(W, y, order), order))
      throw Error(ErrorCode::NotCritical, "point is not critical to order " + order.str());
    out.push_back(evaluate(W, y, order));
  }
  return out;
}

}  // namespace nonarch
