#include <algorithm>
#include <cmath>

#include "nonarch/errors.hpp"
#include "nonarch/novikov.hpp"

namespace nonarch {

namespace {

struct HullPoint {
  int index;
  Rational value;
  bool bound;  // truncated zero: value is a lower bound only
};

struct Segment {
  int i0, i1;
  Rational gamma;
  bool touches_bound;
};

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Complex eval_c(const std::vector<Complex>& a, Complex z) {
  Complex p = 0.0;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) p = p * z + a[i];
  return p;
}

std::vector<Complex> deriv_c(const std::vector<Complex>& a) {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<double>(i));
  return d;
}

// Lower convex hull of the points, left to right.
std::vector<Segment> lower_hull(const std::vector<HullPoint>& pts) {
  std::vector<HullPoint> h;
  for (const auto& p : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h.back();
      // drop b if it lies on or above segment a-p
      Rational lhs = (b.value - a.value) * Rational(p.index - a.index);
      Rational rhs = (p.value - a.value) * Rational(b.index - a.index);
      if (lhs >= rhs) {
        h.pop_back();
      } else {
        break;
      }
    }
    h.push_back(p);
  }
  std::vector<Segment> segs;
  for (std::size_t s = 0; s + 1 < h.size(); ++s) {
    Rational g = (h[s].value - h[s + 1].value) / Rational(h[s + 1].index - h[s].index);
    segs.push_back({h[s].index, h[s + 1].index, g, h[s].bound || h[s + 1].bound});
  }
  return segs;
}

NovikovScalar strip_tail(const NovikovScalar& x, const Rational& order) {
  std::vector<NovikovTerm> keep;
  for (const auto& t : x.terms())
    if (t.exponent < order) keep.push_back(t);
  return NovikovScalar::from_terms(std::move(keep), x.order());
}

class Solver {
 public:
  std::vector<NovikovScalar> solve(std::vector<NovikovScalar> c, const Rational& target, int depth,
                                   bool positive_only) {
    std::vector<NovikovScalar> roots;
    while (c.size() > 1 && c.back().is_exact_zero()) c.pop_back();
    if (c.size() <= 1) return roots;
    if (!c.back().has_terms())
      throw Error(ErrorCode::LeadingDegeneracy, "leading coefficient is not known at its truncation");
    std::size_t z0 = 0;
    while (z0 < c.size() && c[z0].is_exact_zero()) ++z0;
    for (std::size_t k = 0; k < z0; ++k) roots.push_back(NovikovScalar());
    c.erase(c.begin(), c.begin() + static_cast<long>(z0));
    const int d = static_cast<int>(c.size()) - 1;
    if (d == 0) return roots;

    std::vector<HullPoint> pts;
    for (int i = 0; i <= d; ++i) {
      if (c[i].is_exact_zero()) continue;
      if (c[i].has_terms()) {
        pts.push_back({i, c[i].terms().front().exponent, false});
      } else {
        pts.push_back({i, c[i].order().value(), true});
      }
    }
    int first_exact = d;
    for (const auto& p : pts)
      if (!p.bound) {
        first_exact = p.index;
        break;
      }
    // truncated zeros right of the first exact point must lie strictly above the hull of exact points
    {
      std::vector<HullPoint> exact;
      for (const auto& p : pts)
        if (!p.bound) exact.push_back(p);
      auto eh = lower_hull(exact);
      for (const auto& p : pts) {
        if (!p.bound || p.index < first_exact) continue;
        for (const auto& s : eh) {
          if (p.index < s.i0 || p.index > s.i1) continue;
          Rational v0 = c[s.i0].terms().front().exponent;
          Rational line = v0 - s.gamma * Rational(p.index - s.i0);
          if (!(p.value > line))
            throw Error(ErrorCode::TruncatedZero, "coefficient " + std::to_string(p.index) +
                                                      " is needed but only known to order " + p.value.str());
        }
      }
    }
    auto segs = lower_hull(pts);
    for (const auto& s : segs) {
      if (positive_only && s.gamma.sign() <= 0) break;
      const int len = s.i1 - s.i0;
      if (s.gamma >= target) {
        for (int k = 0; k < len; ++k) roots.push_back(NovikovScalar::truncated_zero(target));
        continue;
      }
      if (s.touches_bound)
        throw Error(ErrorCode::TruncatedZero, "root valuation depends on a truncated coefficient");
      solve_segment(c, s, target, depth, roots);
    }
    return roots;
  }

 private:
  void solve_segment(const std::vector<NovikovScalar>& c, const Segment& s, const Rational& target, int depth,
                     std::vector<NovikovScalar>& roots) {
    const Rational h = c[s.i0].terms().front().exponent + s.gamma * Rational(s.i0);
    std::vector<Complex> slope(s.i1 - s.i0 + 1, 0.0);
    for (int i = s.i0; i <= s.i1; ++i) {
      if (!c[i].has_terms()) continue;
      Rational v = c[i].terms().front().exponent;
      if (v + s.gamma * Rational(i) == h) slope[i - s.i0] = c[i].terms().front().coeff;
    }
    auto zs = complex_roots(slope);
    for (const auto& z : zs)
      if (std::abs(z) < 1e-12) throw Error(ErrorCode::LeadingDegeneracy, "slope polynomial has a zero root");

    // cluster nearly equal roots
    std::vector<int> cluster(zs.size(), -1);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < zs.size(); ++a) {
      if (cluster[a] >= 0) continue;
      cluster[a] = static_cast<int>(groups.size());
      groups.push_back({a});
      for (std::size_t b = a + 1; b < zs.size(); ++b) {
        if (cluster[b] < 0 && std::abs(zs[a] - zs[b]) < 1e-6 * std::max(1.0, std::abs(zs[a]))) {
          cluster[b] = cluster[a];
          groups.back().push_back(b);
        }
      }
    }
    for (const auto& g : groups) {
      const int m = static_cast<int>(g.size());
      Complex z = 0.0;
      for (auto idx : g) z += zs[idx];
      z /= static_cast<double>(m);
      if (m == 1) {
        roots.push_back(lift_simple(c, s.gamma, z, target, h));
        continue;
      }
      std::vector<Complex> dm = slope;
      for (int k = 0; k < m - 1; ++k) dm = deriv_c(dm);
      auto dm1 = deriv_c(dm);
      for (int it = 0; it < 20; ++it) {
        Complex den = eval_c(dm1, z);
        if (std::abs(den) == 0.0) break;
        Complex step = eval_c(dm, z) / den;
        z -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
      }
      if (depth + 1 > numeric_config().ramification_depth)
        throw Error(ErrorCode::RamificationDepthExceeded,
                    "repeated leading terms persist past depth " + std::to_string(depth));
      auto mus = solve(shifted(c, s, z, m, h), target - s.gamma, depth + 1, true);
      if (static_cast<int>(mus.size()) != m)
        throw Error(ErrorCode::LeadingDegeneracy, "root cluster could not be separated");
      for (const auto& mu : mus) {
        NovikovScalar lead = NovikovScalar::monomial(z, s.gamma);
        roots.push_back((lead + mu.shift(s.gamma)).truncate(RatInf(target)));
      }
    }
  }

  // q(mu) = p(T^gamma (z + mu)); the base-level part of q_j for j < m vanishes exactly.
  std::vector<NovikovScalar> shifted(const std::vector<NovikovScalar>& c, const Segment& s, Complex z, int m,
                                     const Rational& h) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<NovikovScalar> q(d + 1);
    for (int j = 0; j <= d; ++j) {
      NovikovScalar acc;
      for (int i = j; i <= d; ++i) {
        if (c[i].is_exact_zero()) continue;
        Complex f = binom(i, j) * std::pow(z, i - j);
        acc += c[i].shift(s.gamma * Rational(i)).scale(f);
      }
      if (j < m) {
        std::vector<NovikovTerm> keep;
        for (const auto& t : acc.terms())
          if (!(t.exponent == h)) keep.push_back(t);
        acc = NovikovScalar::from_terms(std::move(keep), acc.order());
      }
      q[j] = acc;
    }
    return q;
  }

  static NovikovScalar horner(const std::vector<NovikovScalar>& c, const NovikovScalar& x, const Rational& w,
                              const Rational& gamma) {
    NovikovScalar b;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
      b = (b * x + c[i]).truncate(RatInf(w - gamma * Rational(i)));
    }
    return b;
  }

  static constexpr double kCancellation = 1e-11;

  // num / den to absolute precision target by leading-term long division; the
  // remainder stays small, unlike num * invert(den).
  static NovikovScalar divide(const NovikovScalar& num, const NovikovScalar& den, const Rational& target) {
    const NovikovTerm dl = den.terms().front();
    double scale = 0;
    for (const auto& t : num.terms()) scale = std::max(scale, std::abs(t.coeff));
    std::vector<NovikovTerm> q;
    NovikovScalar rem = num;
    for (int guard = 0; guard < 100000; ++guard) {
      std::vector<NovikovTerm> keep;
      for (const auto& t : rem.terms())
        if (std::abs(t.coeff) > kCancellation * scale) keep.push_back(t);
      rem = NovikovScalar::from_terms(std::move(keep), rem.order());
      if (!rem.has_terms() || !(rem.terms().front().exponent - dl.exponent < target)) break;
      const NovikovTerm qt{rem.terms().front().exponent - dl.exponent, rem.terms().front().coeff / dl.coeff};
      q.push_back(qt);
      rem -= NovikovScalar::monomial(qt.coeff, qt.exponent) * den;
    }
    RatInf order(target);
    if (!rem.order().is_inf()) order = min(order, RatInf(rem.order().value() - dl.exponent));
    return NovikovScalar::from_terms(std::move(q), order);
  }

  NovikovScalar lift_simple(const std::vector<NovikovScalar>& c, const Rational& gamma, Complex z,
                            const Rational& target, const Rational& h) {
    std::vector<NovikovScalar> dc;
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i].scale(static_cast<double>(i)));
    const Rational vd = h - gamma;  // valuation of p'(lambda)
    const Rational w = target + vd;
    NovikovScalar lam = NovikovScalar::monomial(z, gamma);
    for (int it = 0; it < 64; ++it) {
      NovikovScalar pl = horner(c, lam, w, gamma);
      if (!pl.has_terms()) {
        if (pl.order() < RatInf(w))
          throw Error(ErrorCode::TruncatedZero, "coefficients too coarse for the requested order");
        return lam.truncate(RatInf(target));
      }
      const Rational vp = pl.terms().front().exponent;
      const Rational wd = target - vp + vd + vd;
      NovikovScalar dp = horner(dc, lam, wd, gamma);
      if (!dp.has_terms()) throw Error(ErrorCode::TruncatedZero, "derivative lost at truncation");
      // error a = val(lam - r) > gamma; the step leaves error >= 2a - gamma
      const Rational a = vp - vd;
      const Rational next = std::min(target, a + a - gamma);
      NovikovScalar delta = divide(pl, dp, next);
      lam = strip_tail(lam - delta, next);
      lam = NovikovScalar::from_terms(lam.terms());
    }
    throw Error(ErrorCode::NonConvergence, "T-adic Newton iteration did not settle");
  }
};

}  // namespace

std::vector<NovikovScalar> puiseux_roots(const NovikovPolynomial& p, const Rational& target_order) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "polynomial must be nonconstant");
  if (!p.coeffs.back().has_terms())
    throw Error(ErrorCode::LeadingDegeneracy, "leading coefficient vanishes at its truncation");
  Solver s;
  auto roots = s.solve(p.coeffs, target_order, 0, false);
  std::sort(roots.begin(), roots.end(), [](const NovikovScalar& a, const NovikovScalar& b) {
    RatInf va = a.valuation_bound(), vb = b.valuation_bound();
    if (!(va == vb)) return va < vb;
    if (!a.has_terms() || !b.has_terms()) return false;
    double aa = std::arg(a.terms().front().coeff), ab = std::arg(b.terms().front().coeff);
    if (aa < -1e-9) aa += 2 * M_PI;
    if (ab < -1e-9) ab += 2 * M_PI;
    return aa < ab - 1e-9;
  });
  return roots;
}

}  // namespace nonarch
