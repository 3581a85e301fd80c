#pragma once

#include <map>
#include <string>
#include <vector>

#include "nonarch/ainf.hpp"
#include "nonarch/series.hpp"

namespace nonarch {

// Basis index -> coefficient.
using SeriesVec = std::map<int, LaurentSeries>;
using ScalarVec = std::map<int, NovikovScalar>;
using ScalarMatrix = std::vector<std::vector<NovikovScalar>>;

// m_k = sum_beta T^{E(beta)} Y^{dbeta} m_{k,beta} as a multilinear map over
// Laurent series.
struct MkMap {
  int k = 0;
  int rank = 0;
  Rational cutoff;
  std::map<Word, SeriesVec> table;

  SeriesVec apply(const std::vector<SeriesVec>& xs) const;
  // all inputs basis vectors
  SeriesVec apply_basis(const Word& w) const;
};

// Throws NonzeroObstruction when some (0, beta) entry has Maslov index 0.
MkMap build_mk(const OperatorSystem& m, int k);

struct Superpotential {
  LaurentSeries W;
  std::vector<std::string> q_report;  // Maslov-0 curvature and non-unit Maslov-2 curvature
  bool q_zero() const { return q_report.empty(); }
};

Superpotential superpotential(const OperatorSystem& m);

// m_k specialized at y. Each entry is truncated at target.
std::map<Word, ScalarVec> mk_at_point(const OperatorSystem& m, int k, const TorusPoint& y, const Rational& target);
// Column j holds m_1^y of basis element j.
ScalarMatrix m1_matrix(const OperatorSystem& m, const TorusPoint& y, const Rational& target);

enum class PivotOrder { MinValuation, ColumnScan };

struct RankOptions {
  Rational e_margin{1};
  PivotOrder order = PivotOrder::MinValuation;
};

// Rank over the Novikov field. Pivots need valuation <= order - e_margin,
// otherwise PrecisionLoss.
int novikov_rank(ScalarMatrix a, const RankOptions& opt = {});

struct HfReport {
  int total = 0;
  int even = 0;
  int odd = 0;
  int rank = 0;
};

HfReport hf_report(const OperatorSystem& m, const TorusPoint& y, const RankOptions& opt = {});
int hf_dimension(const OperatorSystem& m, const TorusPoint& y, const RankOptions& opt = {});

// R_1..R_n with m_1(x) = sum_i D_{theta_i} W R_i up to cutoff, for x a basis
// element. Needs m_{1,0} = 0.
std::vector<SeriesVec> jacobian_divide(const OperatorSystem& m, int x, const Rational& cutoff);
// max coefficient distance between m_1(x) and sum_i D_i W R_i
double jacobian_division_residual(const OperatorSystem& m, int x, const std::vector<SeriesVec>& R,
                                  const Rational& cutoff);

OperatorSystem qhat_c1(const OperatorSystem& m_chain);
// (p{phi}) <> i
OperatorSystem theta(const OperatorSystem& i_morph, const OperatorSystem& p_morph, const OperatorSystem& phi);
SeriesVec pproj(const OperatorSystem& f);

struct CoReport {
  SeriesVec co;      // P(Theta(qhat c1))
  LaurentSeries W;   // of the minimal model
  double residual = 0;
  bool match = false;
};

CoReport co_c1(const OperatorSystem& m_chain, const Contraction& con, const HplOptions& opt = {});
CoReport co_c1(const HplResult& h, const OperatorSystem& m_chain);

double series_vec_distance(const SeriesVec& a, const SeriesVec& b);

}  // namespace nonarch
