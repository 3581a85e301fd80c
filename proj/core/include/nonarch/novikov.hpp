#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nonarch/rational.hpp"

namespace nonarch {

using Complex = std::complex<double>;

struct NumericConfig {
  double tau_c = 1e-9;          // coefficient tolerance
  int ramification_depth = 8;   // Puiseux recursion limit
  double root_residual = 1e-12;  // slope-polynomial residual target
};

// Process-wide numeric settings. Change them before starting parallel work.
NumericConfig& numeric_config();

inline bool coeff_equal(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }
inline bool coeff_equal(Complex a, Complex b) { return coeff_equal(a, b, numeric_config().tau_c); }

struct NovikovTerm {
  Rational exponent;
  Complex coeff;
};

// A truncated element  sum c_i T^{e_i} + O(T^order)  of the Novikov field.
// order == inf marks an exact value. No terms and a finite order is a
// "truncated zero": only a lower bound for the valuation is known.
class NovikovScalar {
 public:
  NovikovScalar() = default;
  NovikovScalar(Complex c);  // NOLINT(implicit)
  NovikovScalar(double c) : NovikovScalar(Complex(c, 0.0)) {}  // NOLINT(implicit)
  NovikovScalar(int c) : NovikovScalar(Complex(c, 0.0)) {}     // NOLINT(implicit)
  NovikovScalar(const Rational& c) : NovikovScalar(Complex(c.to_double(), 0.0)) {}  // NOLINT

  static NovikovScalar monomial(Complex c, const Rational& e, RatInf order = RatInf::infinity());
  static NovikovScalar truncated_zero(const Rational& order);
  // Sorts, merges equal exponents, drops |c| <= tau_c and anything at or past order.
  static NovikovScalar from_terms(std::vector<NovikovTerm> terms, RatInf order = RatInf::infinity());

  const std::vector<NovikovTerm>& terms() const { return terms_; }
  const RatInf& order() const { return order_; }
  bool is_exact() const { return order_.is_inf(); }
  bool has_terms() const { return !terms_.empty(); }
  bool is_exact_zero() const { return terms_.empty() && order_.is_inf(); }
  bool is_truncated_zero() const { return terms_.empty() && !order_.is_inf(); }

  // Throws TruncatedZero for a truncated zero; inf for the exact zero.
  RatInf valuation() const;
  // Valuation if known, otherwise the truncation order.
  RatInf valuation_bound() const { return terms_.empty() ? order_ : RatInf(terms_.front().exponent); }
  Complex leading_coeff() const;
  Complex coeff_at(const Rational& e) const;

  NovikovScalar truncate(const RatInf& order) const;
  NovikovScalar shift(const Rational& e) const;  // multiply by T^e
  NovikovScalar scale(Complex c) const;
  NovikovScalar conj() const;

  NovikovScalar operator-() const { return scale(-1.0); }
  NovikovScalar& operator+=(const NovikovScalar& o);
  NovikovScalar& operator-=(const NovikovScalar& o) { return *this += -o; }
  NovikovScalar& operator*=(const NovikovScalar& o);
  friend NovikovScalar operator+(NovikovScalar a, const NovikovScalar& b) { return a += b; }
  friend NovikovScalar operator-(NovikovScalar a, const NovikovScalar& b) { return a -= b; }
  friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b);

  // Same exponents below the common truncation and coefficients within tol.
  bool approx_equal(const NovikovScalar& o, double tol) const;
  bool approx_equal(const NovikovScalar& o) const { return approx_equal(o, numeric_config().tau_c); }
  double max_coeff_distance(const NovikovScalar& o) const;

  // Canonical text: exponent-sorted, "T^(p/q)", 12 significant digits.
  std::string str() const;
  std::string str_with_order() const;

 private:
  std::vector<NovikovTerm> terms_;
  RatInf order_;
  void normalize();
};

NovikovScalar add(const NovikovScalar& a, const NovikovScalar& b);
NovikovScalar mul(const NovikovScalar& a, const NovikovScalar& b);
RatInf valuation(const NovikovScalar& a);
// Result is accurate to min(target_order, O_a - 2 val a).
NovikovScalar invert(const NovikovScalar& a, const Rational& target_order);
NovikovScalar exp_scalar(const NovikovScalar& a, const Rational& target_order);
NovikovScalar pow(const NovikovScalar& a, int n, const Rational& target_order);

std::string format_coeff(Complex c);

struct NovikovPolynomial {
  std::vector<NovikovScalar> coeffs;  // coeffs[i] multiplies lambda^i
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  NovikovScalar evaluate(const NovikovScalar& x) const;
  NovikovPolynomial derivative() const;
  static NovikovPolynomial from_roots(const std::vector<NovikovScalar>& roots);
};

std::vector<NovikovScalar> puiseux_roots(const NovikovPolynomial& p, const Rational& target_order);

// Simultaneous (Aberth) iteration for all complex roots of sum a_i z^i.
std::vector<Complex> complex_roots(const std::vector<Complex>& a);

// Greedy matching of two root multisets: exponents of the leading terms must
// agree exactly and all coefficients within tol. Returns max distance or -1.
double multiset_distance(std::vector<NovikovScalar> a, std::vector<NovikovScalar> b, double tol);

}  // namespace nonarch
