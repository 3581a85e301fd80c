#pragma once

#include <string>
#include <vector>

#include "nonarch/series.hpp"

namespace nonarch {

// Y~^alpha -> T^{<alpha, lambda>} Y^alpha exp <alpha, F(Y)>
struct CoordinateChange {
  std::vector<Rational> lambda;
  std::vector<LaurentSeries> F;

  int rank() const { return static_cast<int>(lambda.size()); }
  static CoordinateChange identity(int rank, const Rational& cutoff);
  // lambda = 0, F_1 = T^a Y_2
  static CoordinateChange focus_focus(const Rational& a, const Rational& cutoff);
  // Terms of F are known and have positive valuation.
  bool positive() const;
};

// Throws DivergenceAtCutoff when F is not positive.
LaurentSeries apply_change(const CoordinateChange& chg, const LaurentSeries& f);

// Throws DivergentEvaluation when some F_i(y) has nonpositive valuation.
TorusPoint push_point(const CoordinateChange& chg, const TorusPoint& y, const Rational& target);

// Energy-graded fixed point G = -phi^{-1}(F). Throws NonConvergence.
CoordinateChange invert_change(const CoordinateChange& chg, const Rational& cutoff);

struct PotentialMatch {
  bool match = false;
  double max_residual = 0;
  std::string offending;  // leading term of phi(W~) - W when there is one
  LaurentSeries residual;
};

PotentialMatch verify_potential_match(const LaurentSeries& W, const LaurentSeries& W_tilde, const CoordinateChange& chg);

struct TransportReport {
  TorusPoint y_tilde;
  std::vector<NovikovScalar> residual;        // D W (y)
  std::vector<NovikovScalar> residual_tilde;  // D W~ (phi(y))
  bool critical = false;
  bool critical_tilde = false;
  bool consistent() const { return critical == critical_tilde; }
};

TransportReport transport_critical(const CoordinateChange& chg, const TorusPoint& y, const LaurentSeries& W,
                                   const LaurentSeries& W_tilde, const Rational& order);

// max distance between D_j(phi W~)(y) and sum_i (delta_ij + D_j F_i(y)) D_i W~(phi(y))
double d_ideal_defect(const CoordinateChange& chg, const LaurentSeries& W_tilde, const TorusPoint& y,
                      const Rational& target);

// {"format": "coordinate_change", "cutoff", "lambda": [...], "F": [series...]}; series are
// lists of [alpha, [[exponent, re, im]...]].
std::string to_json(const CoordinateChange& chg);
CoordinateChange coordinate_change_from_json(const std::string& text);
std::string series_to_json(const LaurentSeries& f);
LaurentSeries series_from_json(const std::string& text);

}  // namespace nonarch
