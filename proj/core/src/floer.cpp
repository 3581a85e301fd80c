#include "nonarch/floer.hpp"

#include <algorithm>
#include <cmath>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

LaurentSeries label_series(const LabelClass& l, const Rational& c, int rank, const Rational& cutoff) {
  LaurentSeries s(rank, cutoff);
  s.add_term(l.boundary, NovikovScalar::monomial(Complex(c.to_double(), 0.0), l.energy));
  return s;
}

void svec_add(SeriesVec& a, int i, const LaurentSeries& s) {
  if (s.is_zero() && s.terms().empty()) return;
  auto it = a.find(i);
  if (it == a.end())
    a.emplace(i, s);
  else
    it->second += s;
}

void svec_add(SeriesVec& a, const SeriesVec& b, const LaurentSeries* scale = nullptr) {
  for (const auto& [i, s] : b) svec_add(a, i, scale ? (*scale) * s : s);
}

void prune(SeriesVec& v) {
  for (auto it = v.begin(); it != v.end();) {
    if (it->second.is_zero())
      it = v.erase(it);
    else
      ++it;
  }
}

}  // namespace

SeriesVec MkMap::apply(const std::vector<SeriesVec>& xs) const {
  if (static_cast<int>(xs.size()) != k) throw Error(ErrorCode::InvalidArgument, "m_k needs k inputs");
  SeriesVec out;
  for (const auto& [w, v] : table) {
    LaurentSeries c = LaurentSeries::constant(rank, NovikovScalar(1)).with_cutoff(cutoff);
    bool zero = false;
    for (int i = 0; i < k && !zero; ++i) {
      auto it = xs[i].find(w[i]);
      if (it == xs[i].end())
        zero = true;
      else
        c = c * it->second;
    }
    if (zero) continue;
    svec_add(out, v, &c);
  }
  prune(out);
  return out;
}

SeriesVec MkMap::apply_basis(const Word& w) const {
  auto it = table.find(w);
  return it == table.end() ? SeriesVec{} : it->second;
}

MkMap build_mk(const OperatorSystem& m, int k) {
  const int rank = m.source()->rank();
  MkMap r{k, rank, m.cutoff(), {}};
  for (const auto& [key, t] : m.entries()) {
    if (key.arity == 0 && key.label.maslov == 0 && !key.label.is_zero())
      throw Error(ErrorCode::NonzeroObstruction, "Maslov-0 curvature at " + key.label.str());
    if (key.arity != k) continue;
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v) svec_add(r.table[w], o, label_series(key.label, c, rank, m.cutoff()));
  }
  for (auto& [w, v] : r.table) prune(v);
  return r;
}

Superpotential superpotential(const OperatorSystem& m) {
  const int rank = m.source()->rank();
  const int u = m.source()->unit();
  Superpotential sp{LaurentSeries(rank, m.cutoff()), {}};
  for (const auto& [key, t] : m.entries()) {
    if (key.arity != 0 || key.label.is_zero()) continue;
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v) {
        if (key.label.maslov == 2 && o == u) {
          sp.W += label_series(key.label, c, rank, m.cutoff());
        } else {
          sp.q_report.push_back("curvature " + c.str() + "*" + m.target()->name(o) + " at " + key.label.str());
        }
      }
  }
  return sp;
}

std::map<Word, ScalarVec> mk_at_point(const OperatorSystem& m, int k, const TorusPoint& y, const Rational& target) {
  std::map<Word, ScalarVec> out;
  for (const auto& [key, t] : m.entries()) {
    if (key.arity != k || key.label.energy >= target) continue;
    NovikovScalar mono = torus_monomial(y, key.label.boundary, target - key.label.energy).shift(key.label.energy);
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v) {
        auto& slot = out[w];
        NovikovScalar term = mono.scale(Complex(c.to_double(), 0.0));
        auto it = slot.find(o);
        if (it == slot.end())
          slot.emplace(o, term);
        else
          it->second += term;
      }
  }
  return out;
}

ScalarMatrix m1_matrix(const OperatorSystem& m, const TorusPoint& y, const Rational& target) {
  const int rows = m.target()->dim(), cols = m.source()->dim();
  ScalarMatrix a(rows, std::vector<NovikovScalar>(cols, NovikovScalar::truncated_zero(target)));
  for (const auto& [w, v] : mk_at_point(m, 1, y, target))
    for (const auto& [o, s] : v) a[o][w[0]] += s;
  return a;
}

int novikov_rank(ScalarMatrix a, const RankOptions& opt) {
  const int rows = static_cast<int>(a.size());
  if (!rows) return 0;
  const int cols = static_cast<int>(a[0].size());
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  int rank = 0;
  for (;;) {
    int pr = -1, pc = -1;
    for (int c = 0; c < cols; ++c) {
      if (col_used[c]) continue;
      for (int r = 0; r < rows; ++r) {
        if (row_used[r] || !a[r][c].has_terms()) continue;
        if (pr < 0 || a[r][c].valuation() < a[pr][pc].valuation()) {
          pr = r;
          pc = c;
        }
      }
      if (opt.order == PivotOrder::ColumnScan && pr >= 0) break;
    }
    if (pr < 0) return rank;
    const NovikovScalar piv = a[pr][pc];
    if (!piv.order().is_inf() && piv.valuation().value() > piv.order().value() - opt.e_margin)
      throw Error(ErrorCode::PrecisionLoss, "pivot of valuation " + piv.valuation().str() +
                                                " too close to truncation " + piv.order().str());
    row_used[pr] = col_used[pc] = true;
    ++rank;
    // fraction-free: row_r <- piv row_r - a[r][pc] row_pr, then rescaled by a monomial
    for (int r = 0; r < rows; ++r) {
      if (row_used[r] || a[r][pc].is_exact_zero()) continue;
      const NovikovScalar f = a[r][pc];
      const NovikovScalar* lead = nullptr;
      for (int c = 0; c < cols; ++c) {
        if (col_used[c]) continue;
        a[r][c] = piv * a[r][c] - f * a[pr][c];
        if (a[r][c].has_terms() && (!lead || a[r][c].valuation() < lead->valuation())) lead = &a[r][c];
      }
      a[r][pc] = NovikovScalar();
      if (!lead) continue;
      const auto& t = lead->terms().front();
      const NovikovScalar scale = NovikovScalar::monomial(1.0 / t.coeff, -t.exponent);
      for (int c = 0; c < cols; ++c)
        if (!col_used[c]) a[r][c] = a[r][c] * scale;
    }
  }
}

HfReport hf_report(const OperatorSystem& m, const TorusPoint& y, const RankOptions& opt) {
  if (static_cast<int>(y.coords.size()) != m.source()->rank())
    throw Error(ErrorCode::RankMismatch, "point rank differs from the basis rank");
  auto sp = superpotential(m);
  if (!sp.q_zero()) throw Error(ErrorCode::NonzeroObstruction, sp.q_report.front());
  ScalarMatrix a = m1_matrix(m, y, m.cutoff());
  HfReport r;
  r.rank = novikov_rank(a, opt);
  const auto& B = *m.source();
  int ne = 0, no = 0;
  for (int i = 0; i < B.dim(); ++i) (B.degree(i) % 2 ? no : ne)++;
  r.total = B.dim() - 2 * r.rank;
  // m_1^y is odd, so its rank splits between even->odd and odd->even
  ScalarMatrix eo, oe;
  std::vector<int> ev, od;
  for (int i = 0; i < B.dim(); ++i) (B.degree(i) % 2 ? od : ev).push_back(i);
  for (int o : od) {
    eo.emplace_back();
    for (int e : ev) eo.back().push_back(a[o][e]);
  }
  for (int e : ev) {
    oe.emplace_back();
    for (int o : od) oe.back().push_back(a[e][o]);
  }
  int r_eo = novikov_rank(eo, opt), r_oe = novikov_rank(oe, opt);
  r.even = ne - r_eo - r_oe;
  r.odd = no - r_oe - r_eo;
  return r;
}

int hf_dimension(const OperatorSystem& m, const TorusPoint& y, const RankOptions& opt) {
  return hf_report(m, y, opt).total;
}

namespace {

SeriesVec unit_vec(int i, int rank, const Rational& cutoff) {
  return {{i, LaurentSeries::constant(rank, NovikovScalar(1)).with_cutoff(cutoff)}};
}

double vec_distance(const SeriesVec& a, const SeriesVec& b) {
  double d = 0;
  for (const auto& [i, s] : a) {
    auto it = b.find(i);
    d = std::max(d, it == b.end() ? s.max_distance(LaurentSeries(s.rank(), s.cutoff())) : s.max_distance(it->second));
  }
  for (const auto& [i, s] : b)
    if (!a.count(i)) d = std::max(d, s.max_distance(LaurentSeries(s.rank(), s.cutoff())));
  return d;
}

}  // namespace

double series_vec_distance(const SeriesVec& a, const SeriesVec& b) { return vec_distance(a, b); }

std::vector<SeriesVec> jacobian_divide(const OperatorSystem& m0, int x, const Rational& cutoff) {
  OperatorSystem m = m0.truncated(kCompleteArity, cutoff);
  const auto& B = *m.source();
  const int n = B.rank(), dim = B.dim(), u = B.unit();
  const LabelClass z = LabelClass::zero(n);
  if (m.find(1, z)) throw Error(ErrorCode::InvalidArgument, "jacobian_divide needs a minimal model");
  MkMap m2 = build_mk(m, 2);
  OperatorSystem m2pos(m.source(), cutoff);
  for (const auto& [key, t] : m.entries())
    if (key.arity == 2 && !key.label.is_zero())
      for (const auto& [w, v] : t) m2pos.add(2, key.label, w, v);
  MkMap m2p = build_mk(m2pos, 2);
  RatInf hbar = m.min_positive_energy();

  std::vector<std::vector<SeriesVec>> R(dim);  // R[b][i]
  auto R_of = [&](const SeriesVec& v, int i) {
    SeriesVec out;
    for (const auto& [b, s] : v) svec_add(out, R[b][i], &s);
    return out;
  };
  int maxdeg = 0;
  for (int b = 0; b < dim; ++b) maxdeg = std::max(maxdeg, B.degree(b));
  for (int d = 0; d <= maxdeg; ++d) {
    std::vector<int> level;
    for (int b = 0; b < dim; ++b)
      if (B.degree(b) == d) level.push_back(b);
    struct Split {
      int theta, rest;
      Rational c;
    };
    std::map<int, Split> split;
    for (int b : level) {
      R[b].assign(n, SeriesVec{});
      if (b == u || d < 1) continue;
      if (auto it = B.h1().find(b); it != B.h1().end()) {
        for (int i = 0; i < n; ++i)
          if (it->second[i])
            R[b][i] = {{u, LaurentSeries::constant(n, NovikovScalar(it->second[i])).with_cutoff(cutoff)}};
        continue;
      }
      bool found = false;
      for (const auto& [th, pv] : B.h1()) {
        for (int xr = 0; xr < dim && !found; ++xr) {
          if (B.degree(xr) != d - 1) continue;
          SparseVec p = m.apply(2, z, {th, xr});
          if (p.size() == 1 && p.begin()->first == b) {
            split[b] = {th, xr, p.begin()->second};
            found = true;
          }
        }
        if (found) break;
      }
      if (!found) throw Error(ErrorCode::NotGenerated, B.name(b) + " is not a product of degree-1 classes");
    }
    if (d == 0) {
      for (int b : level) {
        if (b != u) throw Error(ErrorCode::NotGenerated, "degree-0 class other than the unit");
      }
      continue;
    }
    // fixed point in T^hbar for the same-degree corrections
    std::map<int, std::vector<SeriesVec>> base;
    std::map<int, SeriesVec> corr;
    for (const auto& [b, sp] : split) {
      auto& bb = base[b];
      bb.assign(n, SeriesVec{});
      SeriesVec th = unit_vec(sp.theta, n, cutoff), rest = unit_vec(sp.rest, n, cutoff);
      for (int i = 0; i < n; ++i) {
        svec_add(bb[i], m2.apply({R[sp.theta][i], rest}));
        svec_add(bb[i], m2.apply({th, R[sp.rest][i]}));
      }
      corr[b] = m2p.apply({th, rest});
    }
    int iters = hbar.is_inf() ? 1 : static_cast<int>((cutoff / hbar.value()).floor()) + 2;
    for (int it = 0; it <= iters; ++it) {
      std::map<int, std::vector<SeriesVec>> next;
      for (const auto& [b, sp] : split) {
        auto& nb = next[b];
        nb.assign(n, SeriesVec{});
        LaurentSeries f = LaurentSeries::constant(n, NovikovScalar(-(Rational(1) / sp.c))).with_cutoff(cutoff);
        for (int i = 0; i < n; ++i) {
          SeriesVec s = base[b][i];
          svec_add(s, R_of(corr[b], i));
          for (auto& [k2, v] : s) nb[i][k2] = f * v;
          prune(nb[i]);
        }
      }
      bool same = true;
      for (auto& [b, v] : next) {
        for (int i = 0; i < n; ++i)
          if (vec_distance(v[i], R[b][i]) > 0) same = false;
        R[b] = std::move(v);
      }
      if (same) break;
      if (it == iters) throw Error(ErrorCode::PrecisionLoss, "jacobian division did not settle below the cutoff");
    }
  }
  return R[x];
}

double jacobian_division_residual(const OperatorSystem& m, int x, const std::vector<SeriesVec>& R,
                                  const Rational& cutoff) {
  OperatorSystem mt = m.truncated(kCompleteArity, cutoff);
  const int n = m.source()->rank();
  MkMap m1 = build_mk(mt, 1);
  SeriesVec lhs = m1.apply_basis({x});
  LaurentSeries W = superpotential(mt).W;
  SeriesVec rhs;
  for (int i = 0; i < n; ++i) {
    LaurentSeries Di = log_derivative(W, i);
    svec_add(rhs, R[i], &Di);
  }
  prune(rhs);
  return vec_distance(lhs, rhs);
}

OperatorSystem qhat_c1(const OperatorSystem& m_chain) {
  OperatorSystem q(m_chain.source(), m_chain.target(), m_chain.cutoff(), m_chain.arity_bound(), true);
  for (const auto& [key, t] : m_chain.entries()) {
    if (key.label.maslov == 0) continue;
    Rational s(key.label.maslov, 2);
    for (const auto& [w, v] : t) q.add(key.arity, key.label, w, v, s);
  }
  return q;
}

OperatorSystem theta(const OperatorSystem& i_morph, const OperatorSystem& p_morph, const OperatorSystem& phi) {
  OperatorSystem pq = braces(p_morph, std::vector<const OperatorSystem*>{&phi});
  try {
    OperatorSystem r = compose(pq, i_morph);
    r.set_rcc(true);
    return r;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CurvedRightFactor) throw Error(ErrorCode::CurvedComposition, e.what());
    throw;
  }
}

SeriesVec pproj(const OperatorSystem& f) {
  const int rank = f.source()->rank();
  SeriesVec out;
  for (const auto& [key, t] : f.entries()) {
    if (key.arity != 0) continue;
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v) svec_add(out, o, label_series(key.label, c, rank, f.cutoff()));
  }
  prune(out);
  return out;
}

CoReport co_c1(const HplResult& h, const OperatorSystem& m_chain) {
  OperatorSystem q = qhat_c1(m_chain);
  OperatorSystem th = theta(h.i_morph, h.p_morph, q);
  CoReport r;
  r.co = pproj(th);
  auto sp = superpotential(h.m_min);
  if (!sp.q_zero()) throw Error(ErrorCode::NonzeroObstruction, sp.q_report.front());
  r.W = sp.W;
  SeriesVec w1;
  if (!r.W.is_zero()) w1[h.m_min.source()->unit()] = r.W;
  r.residual = vec_distance(r.co, w1);
  r.match = r.residual <= numeric_config().tau_c;
  return r;
}

CoReport co_c1(const OperatorSystem& m_chain, const Contraction& con, const HplOptions& opt) {
  return co_c1(hpl_minimal_model(m_chain, con, opt), m_chain);
}

}  // namespace nonarch
