#include "nonarch/wallcross.hpp"

#include "json.hpp"
#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

LaurentSeries pair_alpha(const Exponent& alpha, const std::vector<LaurentSeries>& F, int rank, const Rational& cutoff) {
  LaurentSeries g(rank, cutoff);
  for (int i = 0; i < rank; ++i)
    if (alpha[i] != 0) g += F[i].with_cutoff(cutoff).scale(NovikovScalar(double(alpha[i])));
  return g;
}

Rational pair_lambda(const Exponent& alpha, const std::vector<Rational>& lambda) {
  Rational s(0);
  for (std::size_t i = 0; i < lambda.size(); ++i) s += Rational(alpha[i]) * lambda[i];
  return s;
}

void check_rank(const CoordinateChange& chg, int rank) {
  if (chg.rank() != rank || static_cast<int>(chg.F.size()) != rank)
    throw Error(ErrorCode::RankMismatch, "coordinate change rank");
}

}  // namespace

CoordinateChange CoordinateChange::identity(int rank, const Rational& cutoff) {
  return {std::vector<Rational>(rank, Rational(0)), std::vector<LaurentSeries>(rank, LaurentSeries(rank, cutoff))};
}

CoordinateChange CoordinateChange::focus_focus(const Rational& a, const Rational& cutoff) {
  CoordinateChange c = identity(2, cutoff);
  c.F[0].add_term({0, 1}, NovikovScalar::monomial(1.0, a));
  return c;
}

bool CoordinateChange::positive() const {
  for (const auto& f : F)
    for (const auto& [a, c] : f.terms())
      if (c.has_terms() && c.valuation().value().sign() <= 0) return false;
  return true;
}

LaurentSeries apply_change(const CoordinateChange& chg, const LaurentSeries& f) {
  check_rank(chg, f.rank());
  if (!chg.positive()) throw Error(ErrorCode::DivergenceAtCutoff, "F has a term of nonpositive valuation");
  const int n = f.rank();
  const Rational C = f.cutoff();
  LaurentSeries out(n, C);
  Exponent sum(n);
  for (const auto& [alpha, c] : f.terms()) {
    const Rational s = pair_lambda(alpha, chg.lambda);
    const RatInf vb = c.valuation_bound();
    if (vb.is_inf()) continue;
    const Rational need = C - vb.value() - s;  // energy still visible after the shift
    if (need.sign() <= 0) {
      out.add_term(alpha, NovikovScalar::truncated_zero(C));
      continue;
    }
    const NovikovScalar cs = c.shift(s);
    LaurentSeries e = exp_series(pair_alpha(alpha, chg.F, n, need));
    for (const auto& [beta, d] : e.terms()) {
      for (int i = 0; i < n; ++i) sum[i] = alpha[i] + beta[i];
      out.add_term(sum, cs * d);
    }
  }
  return out;
}

TorusPoint push_point(const CoordinateChange& chg, const TorusPoint& y, const Rational& target) {
  check_rank(chg, static_cast<int>(y.coords.size()));
  TorusPoint out;
  for (int i = 0; i < chg.rank(); ++i) {
    NovikovScalar Fi = evaluate(chg.F[i], y, target);
    if (!(Fi.valuation_bound() > RatInf(Rational(0))))
      throw Error(ErrorCode::DivergentEvaluation, "F(y) has nonpositive valuation");
    NovikovScalar yi = y.coords[i].shift(chg.lambda[i]);
    const RatInf v = yi.valuation_bound();
    const Rational rel = v.is_inf() ? target : target - std::min(Rational(0), v.value());
    out.coords.push_back(yi * exp_scalar(Fi, rel));
  }
  return out;
}

CoordinateChange invert_change(const CoordinateChange& chg, const Rational& cutoff) {
  const int n = chg.rank();
  if (!chg.positive()) throw Error(ErrorCode::NonConvergence, "F has a term of nonpositive valuation");
  CoordinateChange inv = CoordinateChange::identity(n, cutoff);
  for (int i = 0; i < n; ++i) inv.lambda[i] = -chg.lambda[i];
  RatInf emin = RatInf::infinity();
  for (const auto& f : chg.F) emin = min(emin, f.min_valuation());
  if (emin.is_inf()) return inv;
  const int iters = static_cast<int>((cutoff / emin.value()).floor()) + 3;
  for (int it = 0; it < iters; ++it) {
    CoordinateChange next = inv;
    for (int i = 0; i < n; ++i) next.F[i] = -apply_change(inv, chg.F[i].with_cutoff(cutoff));
    if (!next.positive()) throw Error(ErrorCode::NonConvergence, "inverse acquires a nonpositive term");
    bool same = true;
    for (int i = 0; i < n; ++i) same = same && next.F[i].approx_equal(inv.F[i]);
    inv = std::move(next);
    if (same) return inv;
  }
  throw Error(ErrorCode::NonConvergence, "inverse did not stabilize below cutoff " + cutoff.str());
}

PotentialMatch verify_potential_match(const LaurentSeries& W, const LaurentSeries& W_tilde, const CoordinateChange& chg) {
  PotentialMatch r;
  const Rational C = min(RatInf(W.cutoff()), RatInf(W_tilde.cutoff())).value();
  r.residual = apply_change(chg, W_tilde.with_cutoff(C)) - W.with_cutoff(C);
  RatInf lead = RatInf::infinity();
  for (const auto& [a, c] : r.residual.terms()) {
    for (const auto& t : c.terms()) r.max_residual = std::max(r.max_residual, std::abs(t.coeff));
    if (c.has_terms() && c.valuation() < lead) {
      lead = c.valuation();
      r.offending = LaurentSeries::monomial(W.rank(), a, NovikovScalar::monomial(c.terms().front().coeff,
                                                                               c.terms().front().exponent))
                        .str();
    }
  }
  r.match = lead.is_inf();
  return r;
}

TransportReport transport_critical(const CoordinateChange& chg, const TorusPoint& y, const LaurentSeries& W,
                                   const LaurentSeries& W_tilde, const Rational& order) {
  TransportReport r;
  r.y_tilde = push_point(chg, y, order);
  r.residual = critical_residual(W, y, order);
  r.residual_tilde = critical_residual(W_tilde, r.y_tilde, order);
  r.critical = residual_vanishes(r.residual, order);
  r.critical_tilde = residual_vanishes(r.residual_tilde, order);
  return r;
}

double d_ideal_defect(const CoordinateChange& chg, const LaurentSeries& W_tilde, const TorusPoint& y,
                      const Rational& target) {
  const int n = chg.rank();
  LaurentSeries W = apply_change(chg, W_tilde);
  TorusPoint yt = push_point(chg, y, target);
  std::vector<NovikovScalar> dt;
  for (int i = 0; i < n; ++i) dt.push_back(evaluate(log_derivative(W_tilde, i), yt, target));
  double d = 0;
  for (int j = 0; j < n; ++j) {
    NovikovScalar lhs = evaluate(log_derivative(W, j), y, target);
    NovikovScalar rhs = dt[j];
    for (int i = 0; i < n; ++i) rhs += evaluate(log_derivative(chg.F[i], j), y, target) * dt[i];
    d = std::max(d, lhs.max_coeff_distance(rhs));
  }
  return d;
}

namespace {

nlohmann::json series_json(const LaurentSeries& f) {
  nlohmann::json j;
  j["rank"] = f.rank();
  j["cutoff"] = f.cutoff().str();
  j["terms"] = nlohmann::json::array();
  for (const auto& [a, c] : f.terms()) {
    if (!c.has_terms()) continue;
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : c.terms()) ts.push_back({t.exponent.str(), t.coeff.real(), t.coeff.imag()});
    j["terms"].push_back({a, ts});
  }
  return j;
}

LaurentSeries series_of(const nlohmann::json& j) {
  const int n = j.at("rank").get<int>();
  LaurentSeries f(n, Rational::parse(j.at("cutoff").get<std::string>()));
  for (const auto& t : j.at("terms")) {
    Exponent a = t.at(0).get<Exponent>();
    if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::RankMismatch, "exponent length");
    std::vector<NovikovTerm> ts;
    for (const auto& x : t.at(1))
      ts.push_back({Rational::parse(x.at(0).get<std::string>()), Complex(x.at(1).get<double>(), x.at(2).get<double>())});
    f.add_term(a, NovikovScalar::from_terms(std::move(ts)));
  }
  return f;
}

template <class F>
auto guarded(const std::string& what, F&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, what + ": " + e.what());
  }
}

}  // namespace

std::string series_to_json(const LaurentSeries& f) { return series_json(f).dump(1); }

LaurentSeries series_from_json(const std::string& text) {
  return guarded("series", [&] { return series_of(nlohmann::json::parse(text)); });
}

std::string to_json(const CoordinateChange& chg) {
  nlohmann::json j;
  j["format"] = "coordinate_change";
  j["lambda"] = nlohmann::json::array();
  for (const auto& l : chg.lambda) j["lambda"].push_back(l.str());
  j["F"] = nlohmann::json::array();
  for (const auto& f : chg.F) j["F"].push_back(series_json(f));
  return j.dump(1);
}

CoordinateChange coordinate_change_from_json(const std::string& text) {
  return guarded("coordinate change", [&] {
    auto j = nlohmann::json::parse(text);
    if (j.value("format", "") != "coordinate_change")
      throw Error(ErrorCode::InvalidArgument, "not a coordinate_change document");
    CoordinateChange c;
    for (const auto& l : j.at("lambda")) c.lambda.push_back(Rational::parse(l.get<std::string>()));
    for (const auto& f : j.at("F")) c.F.push_back(series_of(f));
    check_rank(c, c.rank());
    for (const auto& f : c.F)
      if (f.rank() != c.rank()) throw Error(ErrorCode::RankMismatch, "series rank");
    return c;
  });
}

}  // namespace nonarch
