#include "nonarch/quantum.hpp"

#include <algorithm>

#include "json.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/expr.hpp"

namespace nonarch {

QuantumRing::QuantumRing(std::vector<Element> basis, int unit)
    : basis_(std::move(basis)), unit_(unit) {
  const int n = dim();
  if (unit < 0 || unit >= n) throw Error(ErrorCode::InvalidArgument, "unit index out of range");
  table_.assign(n, std::vector<Coords>(n, Coords(n)));
  c1_.assign(n, NovikovScalar());
}

Coords QuantumRing::basis_vector(int i) const {
  Coords v(dim());
  v[i] = NovikovScalar(1.0);
  return v;
}

Coords QuantumRing::multiply(const Coords& a, const Coords& b) const {
  const int n = dim();
  Coords out(n);
  for (int i = 0; i < n; ++i) {
    if (a[i].is_exact_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j].is_exact_zero()) continue;
      NovikovScalar ab = a[i] * b[j];
      for (int k = 0; k < n; ++k)
        if (!table_[i][j][k].is_exact_zero()) out[k] += ab * table_[i][j][k];
    }
  }
  return out;
}

namespace {

double coords_distance(const Coords& a, const Coords& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, a[k].max_coeff_distance(b[k]));
  return d;
}

}  // namespace

double QuantumRing::associativity_defect() const {
  double d = 0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) {
        Coords left = multiply(product(i, j), basis_vector(k));
        Coords right = multiply(basis_vector(i), product(j, k));
        d = std::max(d, coords_distance(left, right));
      }
  return d;
}

bool QuantumRing::unit_laws_hold() const {
  for (int i = 0; i < dim(); ++i) {
    if (coords_distance(product(unit_, i), basis_vector(i)) != 0) return false;
    if (coords_distance(product(i, unit_), basis_vector(i)) != 0) return false;
  }
  return true;
}

bool QuantumRing::classical_part_graded() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) {
        const auto& c = table_[i][j][k];
        if (c.is_exact_zero()) continue;
        bool has_t0 = false;
        for (const auto& t : c.terms())
          if (t.exponent.sign() == 0) has_t0 = true;
        if (has_t0 && basis_[k].degree != basis_[i].degree + basis_[j].degree) return false;
        if ((basis_[k].degree - basis_[i].degree - basis_[j].degree) % 2 != 0) return false;
      }
  return true;
}

QuantumRing qh_projective(int n, const Rational& E) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "qh_projective needs n >= 1");
  if (E.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "qh_projective needs E > 0");
  std::vector<QuantumRing::Element> basis;
  for (int i = 0; i <= n; ++i)
    basis.push_back({i == 0 ? "1" : i == 1 ? "c" : "c^" + std::to_string(i), 2 * i});
  QuantumRing r(std::move(basis), 0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      Coords v(n + 1);
      if (i + j <= n)
        v[i + j] = NovikovScalar(1.0);
      else
        v[i + j - n - 1] = NovikovScalar::monomial(1.0, E);
      r.set_product(i, j, std::move(v));
    }
  Coords c1(n + 1);
  c1[1] = NovikovScalar(double(n + 1));
  r.set_c1(std::move(c1));
  return r;
}

QuantumRing qh_tensor(const QuantumRing& r1, const QuantumRing& r2) {
  const int n1 = r1.dim(), n2 = r2.dim();
  std::vector<QuantumRing::Element> basis;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      basis.push_back({r1.basis()[a].name + "x" + r2.basis()[b].name, r1.basis()[a].degree + r2.basis()[b].degree});
  auto idx = [n2](int a, int b) { return a * n2 + b; };
  QuantumRing r(std::move(basis), idx(r1.unit(), r2.unit()));
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int a2 = 0; a2 < n1; ++a2)
        for (int b2 = 0; b2 < n2; ++b2) {
          const double sign = (r2.basis()[b].degree * r1.basis()[a2].degree) % 2 ? -1.0 : 1.0;
          Coords v(n1 * n2);
          const Coords& p1 = r1.product(a, a2);
          const Coords& p2 = r2.product(b, b2);
          for (int k1 = 0; k1 < n1; ++k1) {
            if (p1[k1].is_exact_zero()) continue;
            for (int k2 = 0; k2 < n2; ++k2)
              if (!p2[k2].is_exact_zero()) v[idx(k1, k2)] = (p1[k1] * p2[k2]).scale(sign);
          }
          r.set_product(idx(a, b), idx(a2, b2), std::move(v));
        }
  Coords c1(n1 * n2);
  for (int a = 0; a < n1; ++a) c1[idx(a, r2.unit())] += r1.c1()[a];
  for (int b = 0; b < n2; ++b) c1[idx(r1.unit(), b)] += r2.c1()[b];
  r.set_c1(std::move(c1));
  return r;
}

NovikovMatrix mult_matrix(const QuantumRing& ring, const Coords& cls) {
  const int n = ring.dim();
  if (static_cast<int>(cls.size()) != n) throw Error(ErrorCode::RankMismatch, "class has wrong size");
  NovikovMatrix m(n, std::vector<NovikovScalar>(n));
  for (int j = 0; j < n; ++j) {
    Coords col = ring.multiply(cls, ring.basis_vector(j));
    for (int k = 0; k < n; ++k) m[k][j] = col[k];
  }
  return m;
}

NovikovPolynomial characteristic_polynomial(const NovikovMatrix& a) {
  const int n = static_cast<int>(a.size());
  // p holds coefficients from the top degree down.
  std::vector<NovikovScalar> p{NovikovScalar(1.0)};
  for (int k = 0; k < n; ++k) {
    // A_{k+1} = [[A_k, C], [R, a_kk]]
    std::vector<NovikovScalar> t{NovikovScalar(1.0), -a[k][k]};
    std::vector<NovikovScalar> v(k);
    for (int i = 0; i < k; ++i) v[i] = a[i][k];
    for (int s = 0; s < k; ++s) {
      NovikovScalar rv;
      for (int i = 0; i < k; ++i) rv += a[k][i] * v[i];
      t.push_back(-rv);
      std::vector<NovikovScalar> w(k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if (!a[i][j].is_exact_zero() && !v[j].is_exact_zero()) w[i] += a[i][j] * v[j];
      v = std::move(w);
    }
    std::vector<NovikovScalar> q(k + 2);
    for (int r = 0; r < k + 2; ++r)
      for (int c = 0; c <= std::min(r, k); ++c) q[r] += t[r - c] * p[c];
    p = std::move(q);
  }
  NovikovPolynomial out;
  out.coeffs.assign(p.rbegin(), p.rend());
  return out;
}

std::vector<NovikovScalar> c1_eigenvalues(const QuantumRing& ring, const Rational& order) {
  if (ring.dim() > 32) throw Error(ErrorCode::InvalidArgument, "ring too large for characteristic polynomial");
  return puiseux_roots(characteristic_polynomial(mult_matrix(ring, ring.c1())), order);
}

namespace {

std::vector<int> multiplicities(const std::vector<NovikovScalar>& v, double tol) {
  std::vector<int> m(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[i].approx_equal(v[j], tol)) ++m[i];
  return m;
}

}  // namespace

FolkloreReport folklore_match(const std::vector<NovikovScalar>& cv, const std::vector<NovikovScalar>& ev, double tol) {
  FolkloreReport rep;
  std::vector<bool> used(ev.size(), false);
  for (std::size_t i = 0; i < cv.size(); ++i) {
    int best = -1;
    double bd = 0;
    for (std::size_t j = 0; j < ev.size(); ++j) {
      if (used[j] || !cv[i].approx_equal(ev[j], tol)) continue;
      double d = cv[i].max_coeff_distance(ev[j]);
      if (best < 0 || d < bd) best = static_cast<int>(j), bd = d;
    }
    if (best < 0) {
      rep.unmatched.push_back(static_cast<int>(i));
      continue;
    }
    used[best] = true;
    rep.pairs.push_back({static_cast<int>(i), best, bd});
  }
  rep.critical_multiplicity = multiplicities(cv, tol);
  rep.eigenvalue_multiplicity = multiplicities(ev, tol);
  return rep;
}

QuantumRing quantum_ring_from_json(const std::string& text, const Rational& cutoff) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("quantum ring: ") + e.what());
  }
  try {
    if (j.value("format", "") != "quantum_ring") throw Error(ErrorCode::InvalidArgument, "not a quantum_ring document");
    std::vector<QuantumRing::Element> basis;
    for (const auto& b : j.at("basis")) basis.push_back({b.at(0).get<std::string>(), b.at(1).get<int>()});
    const int n = static_cast<int>(basis.size());
    QuantumRing r(std::move(basis), j.at("unit").get<int>());
    auto coords = [&](const nlohmann::json& a) {
      if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::RankMismatch, "coordinate vector has wrong size");
      Coords v;
      for (const auto& e : a) v.push_back(evaluate_scalar_expression(e.get<std::string>(), cutoff));
      return v;
    };
    for (const auto& p : j.at("products")) {
      const int a = p.at(0).get<int>(), b = p.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n) throw Error(ErrorCode::InvalidArgument, "product index out of range");
      r.set_product(a, b, coords(p.at(2)));
    }
    if (j.contains("c1")) r.set_c1(coords(j.at("c1")));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("quantum ring: ") + e.what());
  }
}

std::string to_json(const QuantumRing& r) {
  nlohmann::json j;
  j["format"] = "quantum_ring";
  j["basis"] = nlohmann::json::array();
  for (const auto& b : r.basis()) j["basis"].push_back({b.name, b.degree});
  j["unit"] = r.unit();
  auto coords = [](const Coords& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : v) a.push_back(c.str());
    return a;
  };
  j["c1"] = coords(r.c1());
  j["products"] = nlohmann::json::array();
  for (int a = 0; a < r.dim(); ++a)
    for (int b = 0; b < r.dim(); ++b) {
      const auto& p = r.product(a, b);
      if (std::all_of(p.begin(), p.end(), [](const NovikovScalar& c) { return c.is_exact_zero(); })) continue;
      j["products"].push_back({a, b, coords(p)});
    }
  return j.dump(1);
}

}  // namespace nonarch
