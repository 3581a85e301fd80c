#include "nonarch/series.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "nonarch/errors.hpp"

namespace nonarch {

Rational& default_energy_cutoff() {
  static Rational e(4);
  return e;
}

LaurentSeries::LaurentSeries(int rank) : rank_(rank), cutoff_(default_energy_cutoff()) {}
LaurentSeries::LaurentSeries(int rank, Rational cutoff) : rank_(rank), cutoff_(cutoff) {}

LaurentSeries LaurentSeries::constant(int rank, const NovikovScalar& c) {
  LaurentSeries f(rank);
  f.add_term(Exponent(rank, 0), c);
  return f;
}

LaurentSeries LaurentSeries::monomial(int rank, Exponent alpha, const NovikovScalar& c) {
  if (static_cast<int>(alpha.size()) != rank) throw Error(ErrorCode::RankMismatch, "exponent length");
  LaurentSeries f(rank);
  f.add_term(alpha, c);
  return f;
}

LaurentSeries LaurentSeries::variable(int rank, int i) {
  Exponent a(rank, 0);
  a.at(i) = 1;
  return monomial(rank, a, NovikovScalar(1.0));
}

NovikovScalar LaurentSeries::clip(const NovikovScalar& c, const Rational& cutoff) {
  RatInf cut(cutoff);
  if (c.has_terms() && RatInf(c.terms().back().exponent) >= cut) return c.truncate(cut);
  if (!c.has_terms() && c.order() > cut) return NovikovScalar();
  return c;
}

NovikovScalar LaurentSeries::coeff(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? NovikovScalar() : it->second;
}

void LaurentSeries::add_term(const Exponent& alpha, const NovikovScalar& c) {
  if (static_cast<int>(alpha.size()) != rank_) throw Error(ErrorCode::RankMismatch, "exponent length");
  if (c.is_exact_zero()) return;
  auto it = terms_.find(alpha);
  NovikovScalar v = clip(it == terms_.end() ? c : it->second + c, cutoff_);
  // truncated zeros at or beyond the cutoff carry no information
  bool drop = v.is_exact_zero() || (v.is_truncated_zero() && v.order() >= RatInf(cutoff_));
  if (drop) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(alpha, v);
  } else {
    it->second = v;
  }
}

bool LaurentSeries::is_zero() const {
  for (const auto& [a, c] : terms_)
    if (c.has_terms()) return false;
  return true;
}

std::size_t LaurentSeries::size() const {
  std::size_t n = 0;
  for (const auto& [a, c] : terms_) n += c.has_terms();
  return n;
}

LaurentSeries LaurentSeries::with_cutoff(const Rational& cutoff) const {
  LaurentSeries f(rank_, cutoff);
  for (const auto& [a, c] : terms_) f.add_term(a, c);
  return f;
}

LaurentSeries LaurentSeries::scale(const NovikovScalar& c) const {
  LaurentSeries f(rank_, cutoff_);
  for (const auto& [a, x] : terms_) f.add_term(a, x * c);
  return f;
}

LaurentSeries LaurentSeries::shift(const Rational& energy) const {
  LaurentSeries f(rank_, cutoff_);
  for (const auto& [a, x] : terms_) f.add_term(a, x.shift(energy));
  return f;
}

RatInf LaurentSeries::min_valuation() const {
  RatInf v = RatInf::infinity();
  for (const auto& [a, c] : terms_)
    if (c.has_terms()) v = min(v, c.valuation());
  return v;
}

LaurentSeries LaurentSeries::operator-() const { return scale(NovikovScalar(-1.0)); }

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  if (rank_ != o.rank_) throw Error(ErrorCode::RankMismatch, "series ranks differ");
  if (o.cutoff_ < cutoff_) *this = with_cutoff(o.cutoff_);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) {
  if (f.rank_ != g.rank_) throw Error(ErrorCode::RankMismatch, "series ranks differ");
  LaurentSeries r(f.rank_, min(f.cutoff_, g.cutoff_).value());
  RatInf cut(r.cutoff_);
  Exponent e(f.rank_);
  for (const auto& [a, x] : f.terms_) {
    for (const auto& [b, y] : g.terms_) {
      if (x.valuation_bound() + y.valuation_bound() >= cut) continue;
      for (int i = 0; i < f.rank_; ++i) e[i] = a[i] + b[i];
      r.add_term(e, (x * y).truncate(cut));
    }
  }
  return r;
}

double LaurentSeries::max_distance(const LaurentSeries& o) const {
  double worst = 0.0;
  for (const auto& [a, c] : terms_) worst = std::max(worst, c.max_coeff_distance(o.coeff(a)));
  for (const auto& [a, c] : o.terms_)
    if (!terms_.count(a)) worst = std::max(worst, c.max_coeff_distance(NovikovScalar()));
  return worst;
}

std::string LaurentSeries::str(const std::vector<std::string>& names) const {
  std::vector<std::pair<Exponent, NovikovScalar>> items;
  for (const auto& [a, c] : terms_)
    if (c.has_terms()) items.emplace_back(a, c);
  if (items.empty()) return "0";
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    return x.second.terms().front().exponent < y.second.terms().front().exponent;
  });
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& [a, c] = items[k];
    std::string mono;
    for (int i = 0; i < rank_; ++i) {
      if (a[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < static_cast<int>(names.size()) ? names[i] : "Y" + std::to_string(i + 1);
      if (a[i] != 1) mono += "^" + std::to_string(a[i]);
    }
    std::string cs = c.str();
    std::string piece;
    if (mono.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = mono;
    } else if (cs == "-1") {
      piece = "-" + mono;
    } else if (c.terms().size() == 1) {
      piece = cs + "*" + mono;
    } else {
      piece = "(" + cs + ")*" + mono;
    }
    if (k == 0) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g) { return f * g; }

LaurentSeries log_derivative(const LaurentSeries& f, const std::vector<Rational>& theta) {
  if (static_cast<int>(theta.size()) != f.rank()) throw Error(ErrorCode::RankMismatch, "theta length");
  LaurentSeries r(f.rank(), f.cutoff());
  for (const auto& [a, c] : f.terms()) {
    Rational w(0);
    for (int i = 0; i < f.rank(); ++i) w += theta[i] * Rational(a[i]);
    if (!w.is_zero()) r.add_term(a, c.scale(w.to_double()));
  }
  return r;
}

LaurentSeries log_derivative(const LaurentSeries& f, int i) {
  std::vector<Rational> theta(f.rank(), Rational(0));
  theta.at(i) = Rational(1);
  return log_derivative(f, theta);
}

LaurentSeries exp_series(const LaurentSeries& f) {
  for (const auto& [a, c] : f.terms())
    if (!(c.valuation_bound() > RatInf(Rational(0))))
      throw Error(ErrorCode::NonPositiveValuationTerm, "exp needs every coefficient of positive valuation");
  LaurentSeries out = LaurentSeries::constant(f.rank(), NovikovScalar(1.0)).with_cutoff(f.cutoff());
  LaurentSeries pw = out;
  for (int k = 1; !f.terms().empty(); ++k) {
    pw = (pw * f).scale(NovikovScalar(1.0 / k));
    if (pw.terms().empty()) break;
    out += pw;
  }
  return out;
}

LaurentSeries series_pow(const LaurentSeries& f, int n) {
  if (n >= 0) {
    LaurentSeries out = LaurentSeries::constant(f.rank(), NovikovScalar(1.0)).with_cutoff(f.cutoff());
    for (int k = 0; k < n; ++k) out = out * f;
    return out;
  }
  // f = c Y^alpha (1 + u)
  const Exponent* lead = nullptr;
  RatInf v = f.min_valuation();
  if (v.is_inf()) throw Error(ErrorCode::InvalidArgument, "negative power of zero");
  for (const auto& [a, c] : f.terms()) {
    if (!c.has_terms()) {
      if (!(c.order() > v)) throw Error(ErrorCode::TruncatedZero, "negative power of a series with unknown leading part");
      continue;
    }
    if (c.valuation() == v) {
      if (lead) throw Error(ErrorCode::InvalidArgument, "negative power needs a single dominant monomial");
      lead = &a;
    }
  }
  const Rational& cut = f.cutoff();
  const Rational vv = v.value();
  NovikovScalar c0 = f.coeff(*lead);
  Exponent neg(*lead);
  for (auto& x : neg) x = -x;
  const int m = -n;
  // intermediate cutoff with room for the T-power shifts; entry orders keep the bookkeeping honest
  const Rational work = cut + abs(vv) * Rational(2 * m + 2);
  NovikovScalar ic = invert(c0, work);
  LaurentSeries g = (f.with_cutoff(work) * LaurentSeries::monomial(f.rank(), neg, ic).with_cutoff(work));
  LaurentSeries u = g - LaurentSeries::constant(f.rank(), NovikovScalar(1.0)).with_cutoff(work);
  for (const auto& [a, c] : u.terms())
    if (!(c.valuation_bound() > RatInf(Rational(0))))
      throw Error(ErrorCode::InvalidArgument, "negative power needs a single dominant monomial");
  LaurentSeries inv = LaurentSeries::constant(f.rank(), NovikovScalar(1.0)).with_cutoff(work);
  LaurentSeries pw = inv;
  LaurentSeries mu = -u;
  while (!mu.terms().empty()) {
    pw = pw * mu;
    if (pw.terms().empty()) break;
    inv += pw;
  }
  LaurentSeries base = inv * LaurentSeries::monomial(f.rank(), neg, ic).with_cutoff(work);
  LaurentSeries out = LaurentSeries::constant(f.rank(), NovikovScalar(1.0)).with_cutoff(work);
  for (int k = 0; k < m; ++k) out = out * base;
  return out.with_cutoff(cut);
}

NovikovScalar torus_monomial(const TorusPoint& y, const Exponent& alpha, const Rational& target) {
  if (alpha.size() != y.coords.size()) throw Error(ErrorCode::RankMismatch, "point rank");
  std::vector<Rational> v(alpha.size(), Rational(0));
  Rational total(0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const auto& c = y.coords[i];
    if (!c.has_terms()) {
      if (alpha[i] < 0 || c.is_exact_zero())
        throw Error(ErrorCode::DivergentEvaluation, "coordinate " + std::to_string(i + 1) + " is not invertible");
      v[i] = c.order().value() * Rational(alpha[i]);
    } else {
      v[i] = c.terms().front().exponent * Rational(alpha[i]);
    }
    total += v[i];
  }
  if (target <= total) return NovikovScalar::truncated_zero(total);
  NovikovScalar out(1.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const Rational need = target - (total - v[i]);
    const auto& c = y.coords[i];
    NovikovScalar f = c.has_terms() ? pow(c, alpha[i], need) : NovikovScalar::truncated_zero(v[i]);
    out = out * f;
  }
  return out.truncate(RatInf(target));
}

NovikovScalar evaluate(const LaurentSeries& f, const TorusPoint& y, std::optional<Rational> target) {
  if (static_cast<int>(y.coords.size()) != f.rank()) throw Error(ErrorCode::RankMismatch, "point rank");
  const Rational t = target ? *target : f.cutoff();
  NovikovScalar sum;
  bool touched = false;
  for (const auto& [a, c] : f.terms()) {
    RatInf vb = c.valuation_bound();
    NovikovScalar ym = torus_monomial(y, a, t - vb.value());
    sum += c * ym;
    touched = true;
  }
  if (!touched) return NovikovScalar();
  return sum.truncate(RatInf(t));
}

std::vector<Rational> trop_point(const TorusPoint& y) {
  std::vector<Rational> v;
  for (const auto& c : y.coords) {
    RatInf x = c.valuation();
    if (x.is_inf()) throw Error(ErrorCode::TruncatedZero, "zero coordinate has no tropicalization");
    v.push_back(x.value());
  }
  return v;
}

namespace {

using Vec = std::vector<Rational>;

// Solves the square or rectangular system A x = b; returns the solution if unique.
std::optional<Vec> solve_unique(std::vector<Vec> a, Vec b, int n) {
  const int m = static_cast<int>(a.size());
  int row = 0;
  std::vector<int> pivcol;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int r = row; r < m; ++r)
      if (!a[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Rational f = a[r][col] / a[row][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivcol.push_back(col);
    ++row;
  }
  for (int r = row; r < m; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  if (row < n) return std::nullopt;
  Vec x(n, Rational(0));
  for (int r = 0; r < row; ++r) x[pivcol[r]] = b[r] / a[r][pivcol[r]];
  return x;
}

// One-dimensional null space of A (n-1 rows), if it is one-dimensional.
std::optional<Vec> null_line(std::vector<Vec> a, int n) {
  const int m = static_cast<int>(a.size());
  int row = 0;
  std::vector<int> pivcol;
  std::vector<bool> is_piv(n, false);
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int r = row; r < m; ++r)
      if (!a[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    Rational inv = Rational(1) / a[row][col];
    for (int c = 0; c < n; ++c) a[row][c] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (int c = 0; c < n; ++c) a[r][c] -= f * a[row][c];
    }
    pivcol.push_back(col);
    is_piv[col] = true;
    ++row;
  }
  if (n - row != 1) return std::nullopt;
  int free_col = 0;
  while (is_piv[free_col]) ++free_col;
  Vec d(n, Rational(0));
  d[free_col] = Rational(1);
  for (int r = 0; r < row; ++r) d[pivcol[r]] = -a[r][free_col];
  return d;
}

void combinations(int total, int pick, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(pick);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == pick) {
      fn(idx);
      return;
    }
    for (int i = start; i < total; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

bool PolyhedralDomain::contains(const std::vector<Rational>& v) const {
  for (const auto& [nrm, b] : constraints)
    if (dot(nrm, v) < b) return false;
  return true;
}

PolyhedralDomain PolyhedralDomain::from_constraints(int rank,
                                                    std::vector<std::pair<std::vector<Rational>, Rational>> cs) {
  PolyhedralDomain d;
  d.constraints = std::move(cs);
  const int m = static_cast<int>(d.constraints.size());
  std::set<Vec> verts;
  if (m >= rank) {
    combinations(m, rank, [&](const std::vector<int>& idx) {
      std::vector<Vec> a;
      Vec b;
      for (int i : idx) {
        a.push_back(d.constraints[i].first);
        b.push_back(d.constraints[i].second);
      }
      auto x = solve_unique(a, b, rank);
      if (x && d.contains(*x)) verts.insert(*x);
    });
  }
  d.vertices.assign(verts.begin(), verts.end());
  if (d.vertices.empty()) throw Error(ErrorCode::InvalidArgument, "polyhedron is empty or has no vertex");
  std::set<Vec> rays;
  if (m >= rank - 1) {
    combinations(m, rank - 1, [&](const std::vector<int>& idx) {
      std::vector<Vec> a;
      for (int i : idx) a.push_back(d.constraints[i].first);
      auto line = null_line(a, rank);
      if (!line) return;
      for (int sgn : {1, -1}) {
        Vec r = *line;
        for (auto& x : r) x *= Rational(sgn);
        bool ok = true;
        for (const auto& [nrm, b] : d.constraints)
          if (dot(nrm, r).sign() < 0) ok = false;
        if (!ok) continue;
        // normalize by the first nonzero entry's magnitude
        Rational s(0);
        for (const auto& x : r)
          if (!x.is_zero()) {
            s = abs(x);
            break;
          }
        for (auto& x : r) x /= s;
        rays.insert(r);
      }
    });
  }
  d.rays.assign(rays.begin(), rays.end());
  return d;
}

PolyhedralDomain PolyhedralDomain::box(const std::vector<Rational>& lo, const std::vector<Rational>& hi) {
  const int n = static_cast<int>(lo.size());
  std::vector<std::pair<std::vector<Rational>, Rational>> cs;
  for (int i = 0; i < n; ++i) {
    Vec e(n, Rational(0));
    e[i] = Rational(1);
    cs.emplace_back(e, lo[i]);
    e[i] = Rational(-1);
    cs.emplace_back(e, -hi[i]);
  }
  return from_constraints(n, std::move(cs));
}

AffinoidReport affinoid_member(const LaurentSeries& f, const PolyhedralDomain& delta) {
  AffinoidReport rep;
  for (const auto& [a, c] : f.terms()) {
    if (!c.has_terms()) continue;
    Vec av(a.begin(), a.end());
    const Rational v = c.valuation().value();
    for (const auto& vert : delta.vertices) rep.margin = min(rep.margin, RatInf(v + dot(av, vert)));
    for (const auto& r : delta.rays)
      if (dot(av, r).sign() < 0) rep.unbounded_below = true;
  }
  rep.member = !rep.unbounded_below && (rep.margin.is_inf() || rep.margin.value().sign() >= 0);
  return rep;
}

}  // namespace nonarch
