#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonarch/novikov.hpp"

namespace nonarch {

using Exponent = std::vector<int>;  // alpha in Z^n

// Default energy cutoff E_max for new series.
Rational& default_energy_cutoff();

// Finitely supported sum  sum_alpha c_alpha Y^alpha  with scalars truncated at
// the energy cutoff. A scalar that loses terms to the cutoff has its order
// lowered to E_max; a monomial whose scalar is entirely lost is kept as a
// truncated zero so the loss stays on record. Equality and printing ignore
// such entries.
class LaurentSeries {
 public:
  explicit LaurentSeries(int rank = 0);
  LaurentSeries(int rank, Rational cutoff);

  static LaurentSeries constant(int rank, const NovikovScalar& c);
  static LaurentSeries monomial(int rank, Exponent alpha, const NovikovScalar& c);
  static LaurentSeries variable(int rank, int i);  // Y_{i+1}

  int rank() const { return rank_; }
  const Rational& cutoff() const { return cutoff_; }
  const std::map<Exponent, NovikovScalar>& terms() const { return terms_; }
  NovikovScalar coeff(const Exponent& alpha) const;
  void add_term(const Exponent& alpha, const NovikovScalar& c);
  bool is_zero() const;
  std::size_t size() const;  // monomials carrying known terms
  LaurentSeries with_cutoff(const Rational& cutoff) const;
  LaurentSeries scale(const NovikovScalar& c) const;
  LaurentSeries shift(const Rational& energy) const;  // multiply by T^energy
  // Smallest valuation among known coefficients; inf for zero.
  RatInf min_valuation() const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

  double max_distance(const LaurentSeries& o) const;
  bool approx_equal(const LaurentSeries& o, double tol) const { return max_distance(o) <= tol; }
  bool approx_equal(const LaurentSeries& o) const { return approx_equal(o, numeric_config().tau_c); }

  // Y1..Yn unless names are given.
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int rank_;
  Rational cutoff_;
  std::map<Exponent, NovikovScalar> terms_;
  static NovikovScalar clip(const NovikovScalar& c, const Rational& cutoff);
};

LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries log_derivative(const LaurentSeries& f, const std::vector<Rational>& theta);
LaurentSeries log_derivative(const LaurentSeries& f, int i);  // theta = e_i
LaurentSeries exp_series(const LaurentSeries& f);
// Negative powers need a single dominant monomial: f = c Y^alpha (1 + u) with val(u) > 0.
LaurentSeries series_pow(const LaurentSeries& f, int n);

struct TorusPoint {
  std::vector<NovikovScalar> coords;
};

// y^alpha to absolute precision target.
NovikovScalar torus_monomial(const TorusPoint& y, const Exponent& alpha, const Rational& target);
// sum c_alpha y^alpha. The support of f is taken as exact: monomials outside it
// contribute nothing. The result is truncated at target (default: f's cutoff).
NovikovScalar evaluate(const LaurentSeries& f, const TorusPoint& y, std::optional<Rational> target = {});
std::vector<Rational> trop_point(const TorusPoint& y);

struct PolyhedralDomain {
  std::vector<std::pair<std::vector<Rational>, Rational>> constraints;  // <v, normal> >= bound
  std::vector<std::vector<Rational>> vertices;
  std::vector<std::vector<Rational>> rays;  // recession directions

  static PolyhedralDomain from_constraints(int rank, std::vector<std::pair<std::vector<Rational>, Rational>> cs);
  static PolyhedralDomain box(const std::vector<Rational>& lo, const std::vector<Rational>& hi);
  bool contains(const std::vector<Rational>& v) const;
};

struct AffinoidReport {
  bool member = true;
  RatInf margin;  // min over terms and vertices of val(c) + <alpha, v>
  bool unbounded_below = false;
};

// Necessary-condition check on the stored terms only.
AffinoidReport affinoid_member(const LaurentSeries& f, const PolyhedralDomain& delta);

}  // namespace nonarch
