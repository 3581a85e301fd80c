#include "nonarch/models.hpp"

#include <bit>
#include <functional>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

int popcount(unsigned m) { return std::popcount(m); }

std::string mask_name(unsigned m, int n) {
  if (!m) return "";
  std::string s;
  for (int j = 0; j < n; ++j)
    if (m >> j & 1u) s += "t" + std::to_string(j + 1);
  return s;
}

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= Rational(i);
  return r;
}

}  // namespace

ExteriorAlgebra::ExteriorAlgebra(int n, bool chain) : n_(n), chain_(chain) {
  if (n < 1 || n > 8) throw Error(ErrorCode::InvalidArgument, "exterior rank must be in 1..8");
  std::vector<BasisElement> el;
  const char* rn[] = {"", "a", "b"};
  for (int r = 0; r < (chain ? 3 : 1); ++r)
    for (unsigned m = 0; m < (1u << n); ++m) {
      std::string nm = mask_name(m, n) + rn[r];
      if (nm.empty()) nm = "1";
      el.push_back({nm, popcount(m) + r});
    }
  auto b = std::make_shared<GradedBasis>(std::move(el), 0, n);
  std::map<int, Exponent> h1;
  for (int j = 0; j < n; ++j) {
    Exponent e(n, 0);
    e[j] = 1;
    h1[index(1u << j)] = e;
  }
  b->set_h1(std::move(h1));
  basis_ = b;
}

SparseVec ExteriorAlgebra::mul(int i, int j) const {
  unsigned m1 = mask(i), m2 = mask(j);
  int r1 = rpart(i), r2 = rpart(j);
  if ((r1 && r2) || (m1 & m2)) return {};
  int s = 0;
  for (int k = 0; k < n_; ++k)
    if (m1 >> k & 1u) s += popcount(m2 & ((1u << k) - 1));
  s += r1 * popcount(m2);
  return {{index(m1 | m2, r1 ? r1 : r2), Rational(s % 2 ? -1 : 1)}};
}

SparseVec ExteriorAlgebra::mul(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) vec_add(out, mul(i, j), a * b);
  return out;
}

SparseVec ExteriorAlgebra::iota(const Exponent& v, int i) const {
  unsigned m = mask(i);
  int r = rpart(i);
  SparseVec out;
  for (int j = 0; j < n_; ++j) {
    if (!(m >> j & 1u) || !v[j]) continue;
    int s = popcount(m & ((1u << j) - 1)) % 2 ? -1 : 1;
    vec_add(out, SparseVec{{index(m & ~(1u << j), r), Rational(s * v[j])}});
  }
  return out;
}

SparseVec ExteriorAlgebra::d(int i) const {
  if (rpart(i) != 1) return {};
  return {{index(mask(i), 2), Rational(popcount(mask(i)) % 2 ? -1 : 1)}};
}

std::vector<DiskClass> clifford_cp2_classes(const Rational& E) {
  Rational e = E / Rational(3);
  return {{e, {1, 0}}, {e, {0, 1}}, {e, {-1, -1}}};
}

namespace {

OperatorSystem base_structure(const ExteriorAlgebra& alg, const Rational& cutoff) {
  const auto& B = *alg.basis();
  OperatorSystem m(alg.basis(), cutoff);
  const LabelClass z = LabelClass::zero(alg.n());
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = 0; j < alg.dim(); ++j) m.add(2, z, {i, j}, alg.mul(i, j), Rational(B.degree(i) % 2 ? -1 : 1));
    if (alg.chain()) m.add(1, z, {i}, alg.d(i));
  }
  return m;
}

LabelClass label_of(const DiskClass& c, int n) {
  if (static_cast<int>(c.boundary.size()) != n) throw Error(ErrorCode::RankMismatch, "disk boundary rank");
  if (c.energy.sign() <= 0) throw Error(ErrorCode::NegativeEnergy, "disk classes need positive energy");
  return {c.energy, c.maslov, c.boundary};
}

}  // namespace

OperatorSystem strict_model(const ExteriorAlgebra& alg, const std::vector<DiskClass>& classes,
                            const Rational& cutoff) {
  OperatorSystem m = base_structure(alg, cutoff);
  for (const auto& c : classes) {
    LabelClass lab = label_of(c, alg.n());
    m.add(0, lab, {}, alg.basis()->unit(), c.weight);
    for (int i = 0; i < alg.dim(); ++i) m.add(1, lab, {i}, alg.iota(c.boundary, i), c.weight);
  }
  return m;
}

OperatorSystem divisor_model(const ExteriorAlgebra& alg, const std::vector<DiskClass>& classes, int arity,
                             const Rational& cutoff) {
  OperatorSystem m = base_structure(alg, cutoff);
  m.set_arity_bound(arity);
  for (const auto& c : classes) {
    LabelClass lab = label_of(c, alg.n());
    m.add(0, lab, {}, alg.basis()->unit(), c.weight);
    std::vector<SparseVec> io(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) io[i] = alg.iota(c.boundary, i);
    for (int k = 1; k <= arity; ++k) {
      Rational w = c.weight / factorial(k);
      Word t(k);
      std::function<void(int, SparseVec)> rec = [&](int p, SparseVec acc) {
        if (acc.empty()) return;
        if (p == k) {
          m.add(k, lab, t, acc, w);
          return;
        }
        for (int i = 0; i < alg.dim(); ++i) {
          if (io[i].empty()) continue;
          t[p] = i;
          rec(p + 1, alg.mul(acc, io[i]));
        }
      };
      rec(0, SparseVec{{alg.basis()->unit(), Rational(1)}});
    }
  }
  return m;
}

namespace {

// (g <> f) restricted to a single (k, beta)
Tensor compose_entry(const OperatorSystem& g, const std::vector<std::pair<EntryKey, const Tensor*>>& fe, int k,
                     const LabelClass& target) {
  Tensor out;
  std::map<EntryKey, std::map<int, std::vector<std::pair<Word, Rational>>>> idx;
  for (const auto& [key, t] : fe) {
    auto& m = idx[key];
    for (const auto& [w, v] : *t)
      for (const auto& [o, c] : v) m[o].emplace_back(w, c);
  }
  for (const auto& [gkey, gt] : g.entries()) {
    if (gkey.label.energy > target.energy) continue;
    const int l = gkey.arity;
    std::vector<const std::map<int, std::vector<std::pair<Word, Rational>>>*> choice(l);
    std::function<void(int, int, LabelClass)> rec = [&](int p, int kk, LabelClass lab) {
      if (p == l) {
        if (kk != k || !(lab == target)) return;
        for (const auto& [tg, vg] : gt) {
          std::vector<std::pair<Word, Rational>> partial{{Word{}, Rational(1)}};
          for (int q = 0; q < l && !partial.empty(); ++q) {
            auto it = choice[q]->find(tg[q]);
            std::vector<std::pair<Word, Rational>> next;
            if (it != choice[q]->end())
              for (const auto& [pw, pc] : partial)
                for (const auto& [fw, fc] : it->second) {
                  Word w = pw;
                  w.insert(w.end(), fw.begin(), fw.end());
                  next.emplace_back(std::move(w), pc * fc);
                }
            partial = std::move(next);
          }
          for (const auto& [pw, pc] : partial) tensor_add(out, pw, vg, pc);
        }
        return;
      }
      for (const auto& [key, m] : idx) {
        LabelClass nl = lab + key.label;
        if (nl.energy > target.energy || kk + key.arity > k) continue;
        choice[p] = &m;
        rec(p + 1, kk + key.arity, nl);
      }
    };
    rec(0, 0, gkey.label);
  }
  return out;
}

}  // namespace

OperatorSystem pushforward(const OperatorSystem& m0, const OperatorSystem& f, int arity) {
  const Rational cut = m0.cutoff();
  RatInf emin = min(m0.min_positive_energy(), f.min_positive_energy());
  const int Kall = emin.is_inf() ? arity : arity + static_cast<int>((cut / emin.value()).floor());
  OperatorSystem rhs = braces(f, std::vector<const OperatorSystem*>{&m0}).truncated(Kall, cut);
  std::set<LabelClass> labs = rhs.labels();
  std::vector<LabelClass> flabs;
  for (const auto& l : f.labels())
    if (l.energy.sign() > 0) flabs.push_back(l);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& l : std::vector<LabelClass>(labs.begin(), labs.end()))
      for (const auto& g : flabs) {
        LabelClass nl = l + g;
        if (nl.energy <= cut && labs.insert(nl).second) changed = true;
      }
  }
  std::vector<std::pair<EntryKey, const Tensor*>> fe;
  for (const auto& [key, t] : f.entries()) fe.emplace_back(key, &t);
  OperatorSystem mc(m0.source(), cut, Kall);
  for (const auto& b : labs) {
    for (int k = 0; k <= Kall; ++k) {
      Tensor T;
      if (const Tensor* r = rhs.find(k, b)) T = *r;
      if (!mc.is_zero())
        for (const auto& [w, v] : compose_entry(mc, fe, k, b)) tensor_add(T, w, v, Rational(-1));
      for (const auto& [w, v] : T) mc.add(k, b, w, v);
    }
  }
  return mc;
}

Contraction torus_contraction(const ExteriorAlgebra& chain, const ExteriorAlgebra& small) {
  if (!chain.chain() || small.chain() || chain.n() != small.n())
    throw Error(ErrorCode::BasisMismatch, "torus contraction needs a chain algebra and its cohomology");
  Contraction c{chain.basis(), small.basis(), {}, {}, {}};
  for (unsigned m = 0; m < (1u << small.n()); ++m) {
    c.i[small.index(m)] = {{chain.index(m, 0), Rational(1)}};
    c.pi[chain.index(m, 0)] = {{small.index(m), Rational(1)}};
    c.G[chain.index(m, 2)] = {{chain.index(m, 1), Rational(popcount(m) % 2 ? 1 : -1)}};
  }
  return c;
}

DeformedChainModel deformed_chain_model(const std::vector<DiskClass>& classes, const Rational& e,
                                        const Rational& cutoff, int arity) {
  ExteriorAlgebra small(2, false), chain(2, true);
  OperatorSystem m0 = strict_model(chain, classes, cutoff);
  const LabelClass z = LabelClass::zero(2);
  const LabelClass gam{e, 0, {1, 0}}, gp{e, 0, {0, 1}};
  const int a = chain.index(0, 1), t1 = chain.generator(0), t2 = chain.generator(1);
  OperatorSystem f = identity_system(chain.basis(), cutoff);
  f.add(0, gam, {}, a, Rational(2));
  f.add(2, z, {t1, t2}, a, Rational(1));
  f.add(1, gp, {a}, t2, Rational(1));
  f.add(2, gp, {t1, t2}, t2, Rational(1));
  OperatorSystem mc = pushforward(m0, f, arity);
  Contraction con = torus_contraction(chain, small);
  return {small, chain, std::move(m0), std::move(f), std::move(mc), std::move(con)};
}

}  // namespace nonarch
