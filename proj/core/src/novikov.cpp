#include "nonarch/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nonarch/errors.hpp"

namespace nonarch {

NumericConfig& numeric_config() {
  static NumericConfig cfg;
  return cfg;
}

NovikovScalar::NovikovScalar(Complex c) {
  if (std::abs(c) > numeric_config().tau_c) terms_.push_back({Rational(0), c});
}

NovikovScalar NovikovScalar::monomial(Complex c, const Rational& e, RatInf order) {
  NovikovScalar s;
  s.order_ = order;
  s.terms_.push_back({e, c});
  s.normalize();
  return s;
}

NovikovScalar NovikovScalar::truncated_zero(const Rational& order) {
  NovikovScalar s;
  s.order_ = order;
  return s;
}

NovikovScalar NovikovScalar::from_terms(std::vector<NovikovTerm> terms, RatInf order) {
  NovikovScalar s;
  s.terms_ = std::move(terms);
  s.order_ = order;
  s.normalize();
  return s;
}

void NovikovScalar::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const NovikovTerm& a, const NovikovTerm& b) { return a.exponent < b.exponent; });
  std::vector<NovikovTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!order_.is_inf() && !(RatInf(t.exponent) < order_)) break;
    if (!out.empty() && out.back().exponent == t.exponent) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  const double tau = numeric_config().tau_c;
  terms_.clear();
  for (const auto& t : out)
    if (std::abs(t.coeff) > tau) terms_.push_back(t);
}

RatInf NovikovScalar::valuation() const {
  if (!terms_.empty()) return terms_.front().exponent;
  if (order_.is_inf()) return RatInf::infinity();
  throw Error(ErrorCode::TruncatedZero, "valuation unknown below order " + order_.str());
}

Complex NovikovScalar::leading_coeff() const {
  if (terms_.empty()) throw Error(ErrorCode::TruncatedZero, "no leading term");
  return terms_.front().coeff;
}

Complex NovikovScalar::coeff_at(const Rational& e) const {
  for (const auto& t : terms_) {
    if (t.exponent == e) return t.coeff;
    if (e < t.exponent) break;
  }
  return {0.0, 0.0};
}

NovikovScalar NovikovScalar::truncate(const RatInf& order) const {
  NovikovScalar s = *this;
  if (order < s.order_) {
    s.order_ = order;
    s.normalize();
  }
  return s;
}

NovikovScalar NovikovScalar::shift(const Rational& e) const {
  NovikovScalar s = *this;
  for (auto& t : s.terms_) t.exponent += e;
  if (!s.order_.is_inf()) s.order_ = RatInf(s.order_.value() + e);
  return s;
}

NovikovScalar NovikovScalar::scale(Complex c) const {
  if (std::abs(c) == 0.0) {
    NovikovScalar z;
    if (!terms_.empty() || !order_.is_inf()) z.order_ = order_;
    return z;
  }
  NovikovScalar s = *this;
  for (auto& t : s.terms_) t.coeff *= c;
  s.normalize();
  return s;
}

NovikovScalar NovikovScalar::conj() const {
  NovikovScalar s = *this;
  for (auto& t : s.terms_) t.coeff = std::conj(t.coeff);
  return s;
}

NovikovScalar& NovikovScalar::operator+=(const NovikovScalar& o) {
  order_ = min(order_, o.order_);
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
  if (a.is_exact_zero() || b.is_exact_zero()) return NovikovScalar();
  NovikovScalar r;
  r.order_ = min(a.order_ + b.valuation_bound(), b.order_ + a.valuation_bound());
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Rational e = x.exponent + y.exponent;
      if (!r.order_.is_inf() && !(RatInf(e) < r.order_)) break;
      r.terms_.push_back({e, x.coeff * y.coeff});
    }
  }
  r.normalize();
  return r;
}

NovikovScalar& NovikovScalar::operator*=(const NovikovScalar& o) { return *this = *this * o; }

double NovikovScalar::max_coeff_distance(const NovikovScalar& o) const {
  RatInf cut = min(order_, o.order_);
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  auto below = [&](const Rational& e) { return cut.is_inf() || RatInf(e) < cut; };
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exponent < o.terms_[j].exponent)) {
      if (below(terms_[i].exponent)) worst = std::max(worst, std::abs(terms_[i].coeff));
      ++i;
    } else if (i == terms_.size() || o.terms_[j].exponent < terms_[i].exponent) {
      if (below(o.terms_[j].exponent)) worst = std::max(worst, std::abs(o.terms_[j].coeff));
      ++j;
    } else {
      if (below(terms_[i].exponent)) worst = std::max(worst, std::abs(terms_[i].coeff - o.terms_[j].coeff));
      ++i;
      ++j;
    }
  }
  return worst;
}

bool NovikovScalar::approx_equal(const NovikovScalar& o, double tol) const {
  return max_coeff_distance(o) <= tol;
}

std::string format_coeff(Complex c) {
  const double tau = numeric_config().tau_c;
  double scale = std::max(1.0, std::abs(c));
  double re = std::abs(c.real()) <= tau * scale ? 0.0 : c.real();
  double im = std::abs(c.imag()) <= tau * scale ? 0.0 : c.imag();
  auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
  };
  if (im == 0.0) return num(re);
  std::string imag = im == 1.0 ? "i" : im == -1.0 ? "-i" : num(im) + "i";
  if (re == 0.0) return imag;
  return "(" + num(re) + (im > 0 ? "+" : "") + imag + ")";
}

namespace {

std::string t_power(const Rational& e) {
  if (e.is_zero()) return "";
  if (e == Rational(1)) return "T";
  if (e.is_integer() && e.sign() > 0) return "T^" + e.str();
  return "T^(" + e.str() + ")";
}

}  // namespace

std::string NovikovScalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const double tau = numeric_config().tau_c;
    bool negative_real = std::abs(t.coeff.imag()) <= tau * std::max(1.0, std::abs(t.coeff)) && t.coeff.real() < 0;
    Complex c = negative_real && !first ? -t.coeff : t.coeff;
    std::string tp = t_power(t.exponent);
    std::string body;
    std::string cs = format_coeff(c);
    if (tp.empty()) {
      body = cs;
    } else if (cs == "1") {
      body = tp;
    } else if (cs == "-1") {
      body = "-" + tp;
    } else {
      body = cs + "*" + tp;
    }
    if (first) {
      out = body;
    } else {
      out += negative_real ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

std::string NovikovScalar::str_with_order() const {
  if (order_.is_inf()) return str();
  std::string o = "O(" + (order_.value().is_zero() ? std::string("1") : t_power(order_.value())) + ")";
  if (terms_.empty()) return o;
  return str() + " + " + o;
}

NovikovScalar add(const NovikovScalar& a, const NovikovScalar& b) { return a + b; }
NovikovScalar mul(const NovikovScalar& a, const NovikovScalar& b) { return a * b; }
RatInf valuation(const NovikovScalar& a) { return a.valuation(); }

NovikovScalar invert(const NovikovScalar& a, const Rational& target_order) {
  if (a.is_exact_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of the exact zero");
  if (!a.has_terms()) throw Error(ErrorCode::TruncatedZero, "inverse of a truncated zero");
  const Rational v = a.terms().front().exponent;
  const Complex c0 = a.terms().front().coeff;
  RatInf result_order = min(RatInf(target_order), a.order() - v - v);
  // a = c0 T^v (1 + u)
  std::vector<NovikovTerm> ut;
  for (std::size_t i = 1; i < a.terms().size(); ++i)
    ut.push_back({a.terms()[i].exponent - v, a.terms()[i].coeff / c0});
  NovikovScalar u = NovikovScalar::from_terms(std::move(ut), a.order() - v);
  RatInf rel = result_order.is_inf() ? RatInf(target_order + v) : RatInf(result_order.value() + v);
  NovikovScalar s = NovikovScalar(1.0);
  NovikovScalar pw = NovikovScalar(1.0);
  NovikovScalar mu = -u;
  while (u.has_terms()) {
    pw = (pw * mu).truncate(rel);
    if (!pw.has_terms()) break;
    s += pw;
  }
  s = s.truncate(min(rel, u.order()));
  return s.scale(1.0 / c0).shift(-v).truncate(result_order);
}

NovikovScalar exp_scalar(const NovikovScalar& a, const Rational& target_order) {
  if (a.has_terms() && a.terms().front().exponent.sign() < 0)
    throw Error(ErrorCode::NegativeValuation, "exp of an element outside Lambda_0");
  if (!a.has_terms() && !a.order().is_inf() && a.order().value().sign() < 0)
    throw Error(ErrorCode::NegativeValuation, "exp of a truncated zero with negative order");
  Complex a0 = a.coeff_at(Rational(0));
  std::vector<NovikovTerm> pt;
  for (const auto& t : a.terms())
    if (t.exponent.sign() > 0) pt.push_back(t);
  RatInf r = min(RatInf(target_order), a.order());
  NovikovScalar p = NovikovScalar::from_terms(std::move(pt), a.order());
  const Complex e0 = std::exp(a0);
  NovikovScalar s(e0), pw(e0);
  for (int k = 1; p.has_terms(); ++k) {
    pw = (pw * p).truncate(r).scale(1.0 / k);
    if (!pw.has_terms()) break;
    s += pw;
  }
  return s.truncate(r);
}

NovikovScalar pow(const NovikovScalar& a, int n, const Rational& target_order) {
  if (n == 0) return NovikovScalar(1.0);
  if (a.is_exact_zero()) return NovikovScalar();
  if (!a.has_terms()) {
    if (n < 0) throw Error(ErrorCode::TruncatedZero, "negative power of a truncated zero");
    return NovikovScalar::truncated_zero(min(RatInf(target_order), RatInf(a.order().value() * Rational(n))).value());
  }
  const Rational v = a.valuation().value();
  if (RatInf(target_order) <= RatInf(v * Rational(n))) return NovikovScalar::truncated_zero(target_order);
  NovikovScalar base = a;
  if (n < 0) {
    n = -n;
    // the inverse has valuation -v; each factor must be known to target + (n-1) v
    base = invert(a, target_order + v * Rational(n - 1));
  }
  const Rational vb = base.valuation().value();
  NovikovScalar out = base.truncate(RatInf(target_order - vb * Rational(n - 1)));
  for (int k = 2; k <= n; ++k) out = (out * base).truncate(RatInf(target_order - vb * Rational(n - k)));
  return out;
}

NovikovScalar NovikovPolynomial::evaluate(const NovikovScalar& x) const {
  NovikovScalar b;
  for (int i = degree(); i >= 0; --i) b = b * x + coeffs[i];
  return b;
}

NovikovPolynomial NovikovPolynomial::derivative() const {
  NovikovPolynomial d;
  for (int i = 1; i <= degree(); ++i) d.coeffs.push_back(coeffs[i].scale(static_cast<double>(i)));
  if (d.coeffs.empty()) d.coeffs.push_back(NovikovScalar());
  return d;
}

NovikovPolynomial NovikovPolynomial::from_roots(const std::vector<NovikovScalar>& roots) {
  NovikovPolynomial p;
  p.coeffs = {NovikovScalar(1.0)};
  for (const auto& r : roots) {
    std::vector<NovikovScalar> next(p.coeffs.size() + 1);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      next[i + 1] += p.coeffs[i];
      next[i] -= p.coeffs[i] * r;
    }
    p.coeffs = std::move(next);
  }
  return p;
}

std::vector<Complex> complex_roots(const std::vector<Complex>& a_in) {
  std::vector<Complex> a = a_in;
  while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return {};
  if (d == 1) return {-a[0] / a[1]};
  for (auto& x : a) x /= a_in[d];
  auto eval = [&](Complex z, Complex& dp) {
    Complex p = a[d];
    dp = 0.0;
    for (int i = d - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + a[i];
    }
    return p;
  };
  double radius = 0.0;
  for (int i = 0; i < d; ++i) radius = std::max(radius, std::pow(std::abs(a[i]), 1.0 / (d - i)));
  radius = std::max(radius, 1e-3);
  std::vector<Complex> z(d);
  for (int k = 0; k < d; ++k) z[k] = std::polar(radius, 2.0 * M_PI * k / d + 0.4);
  const double target = numeric_config().root_residual;
  for (int it = 0; it < 2000; ++it) {
    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
      Complex dp;
      Complex p = eval(z[k], dp);
      if (std::abs(p) == 0.0) continue;
      Complex ratio = dp == 0.0 ? Complex(1e-3, 0.0) : p / dp;
      Complex s = 0.0;
      for (int j = 0; j < d; ++j)
        if (j != k && z[k] != z[j]) s += 1.0 / (z[k] - z[j]);
      Complex w = ratio / (1.0 - ratio * s);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
    }
    if (worst < target * 1e-4) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      Complex dp;
      Complex p = eval(r, dp);
      if (std::abs(dp) < 1e-300) break;
      Complex nr = r - p / dp;
      Complex dq;
      if (std::abs(eval(nr, dq)) >= std::abs(p)) break;
      r = nr;
    }
  }
  return z;
}

double multiset_distance(std::vector<NovikovScalar> a, std::vector<NovikovScalar> b, double tol) {
  if (a.size() != b.size()) return -1.0;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double dd = x.max_coeff_distance(b[j]);
      if (dd < bd) {
        bd = dd;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || bd > tol) return -1.0;
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

}  // namespace nonarch
