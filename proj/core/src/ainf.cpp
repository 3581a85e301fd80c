#include "nonarch/ainf.hpp"

#include <algorithm>
#include <sstream>

#include "nonarch/errors.hpp"
#include "json.hpp"

namespace nonarch {

bool LabelClass::is_zero() const {
  if (!energy.is_zero() || maslov != 0) return false;
  for (int x : boundary)
    if (x) return false;
  return true;
}

LabelClass LabelClass::operator+(const LabelClass& o) const {
  LabelClass r{energy + o.energy, maslov + o.maslov, boundary};
  for (std::size_t i = 0; i < r.boundary.size(); ++i) r.boundary[i] += o.boundary[i];
  return r;
}

LabelClass LabelClass::operator-(const LabelClass& o) const {
  LabelClass r{energy - o.energy, maslov - o.maslov, boundary};
  for (std::size_t i = 0; i < r.boundary.size(); ++i) r.boundary[i] -= o.boundary[i];
  return r;
}

std::string LabelClass::str() const {
  std::string s = "[" + energy.str() + ", " + std::to_string(maslov) + ", (";
  for (std::size_t i = 0; i < boundary.size(); ++i) s += (i ? "," : "") + std::to_string(boundary[i]);
  return s + ")]";
}

GradedBasis::GradedBasis(std::vector<BasisElement> elements, int unit, int rank)
    : elements_(std::move(elements)), unit_(unit), rank_(rank) {
  if (unit_ < 0 || unit_ >= dim()) throw Error(ErrorCode::InvalidArgument, "unit index out of range");
  if (elements_[unit_].degree != 0) throw Error(ErrorCode::InvalidArgument, "unit must have degree 0");
  for (int a = 0; a < dim(); ++a)
    for (int b = a + 1; b < dim(); ++b)
      if (elements_[a].name == elements_[b].name)
        throw Error(ErrorCode::InvalidArgument, "duplicate basis name " + elements_[a].name);
}

int GradedBasis::index(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (elements_[i].name == name) return i;
  throw Error(ErrorCode::UnknownName, "no basis element " + name);
}

bool GradedBasis::same_as(const GradedBasis& o) const {
  if (this == &o) return true;
  if (dim() != o.dim() || unit_ != o.unit_ || rank_ != o.rank_) return false;
  for (int i = 0; i < dim(); ++i)
    if (elements_[i].name != o.elements_[i].name || elements_[i].degree != o.elements_[i].degree) return false;
  return true;
}

void vec_add(SparseVec& a, const SparseVec& b, const Rational& c) {
  for (const auto& [k, v] : b) {
    auto it = a.find(k);
    Rational x = c * v;
    if (it == a.end()) {
      if (!x.is_zero()) a.emplace(k, x);
    } else {
      it->second += x;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

void tensor_add(Tensor& t, const Word& w, const SparseVec& v, const Rational& c) {
  if (v.empty() || c.is_zero()) return;
  auto it = t.find(w);
  if (it == t.end()) {
    SparseVec nv;
    vec_add(nv, v, c);
    if (!nv.empty()) t.emplace(w, std::move(nv));
    return;
  }
  vec_add(it->second, v, c);
  if (it->second.empty()) t.erase(it);
}

OperatorSystem::OperatorSystem(BasisPtr basis, Rational cutoff, int arity_bound, bool rcc)
    : OperatorSystem(basis, basis, cutoff, arity_bound, rcc) {}

OperatorSystem::OperatorSystem(BasisPtr source, BasisPtr target, Rational cutoff, int arity_bound, bool rcc)
    : source_(std::move(source)), target_(std::move(target)), cutoff_(cutoff), arity_bound_(arity_bound), rcc_(rcc) {}

void OperatorSystem::add(int k, const LabelClass& label, const Word& w, const SparseVec& v, const Rational& c) {
  if (label.energy > cutoff_) return;
  if (static_cast<int>(w.size()) != k) throw Error(ErrorCode::InvalidArgument, "word length differs from arity");
  EntryKey key{k, label};
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    Tensor t;
    tensor_add(t, w, v, c);
    if (!t.empty()) entries_.emplace(key, std::move(t));
    return;
  }
  tensor_add(it->second, w, v, c);
  if (it->second.empty()) entries_.erase(it);
}

void OperatorSystem::add(int k, const LabelClass& label, const Word& w, int out, const Rational& c) {
  add(k, label, w, SparseVec{{out, Rational(1)}}, c);
}

void OperatorSystem::add_system(const OperatorSystem& o, const Rational& c) {
  if (!o.source_->same_as(*source_) || !o.target_->same_as(*target_))
    throw Error(ErrorCode::BasisMismatch, "adding systems on different bases");
  arity_bound_ = std::min(arity_bound_, o.arity_bound_);
  if (o.cutoff_ < cutoff_) *this = truncated(kCompleteArity, o.cutoff_);
  rcc_ = rcc_ || o.rcc_;
  for (const auto& [key, t] : o.entries_)
    for (const auto& [w, v] : t) add(key.arity, key.label, w, v, c);
}

const Tensor* OperatorSystem::find(int k, const LabelClass& label) const {
  auto it = entries_.find(EntryKey{k, label});
  return it == entries_.end() ? nullptr : &it->second;
}

SparseVec OperatorSystem::apply(int k, const LabelClass& label, const Word& w) const {
  const Tensor* t = find(k, label);
  if (!t) return {};
  auto it = t->find(w);
  return it == t->end() ? SparseVec{} : it->second;
}

std::size_t OperatorSystem::nnz() const {
  std::size_t n = 0;
  for (const auto& [k, t] : entries_)
    for (const auto& [w, v] : t) n += v.size();
  return n;
}

int OperatorSystem::entry_label_degree(const EntryKey& key, const Word& w, int out) const {
  int d = target_->degree(out) + key.arity - 1 + key.label.maslov;
  for (int x : w) d -= source_->degree(x);
  return d;
}

std::optional<int> OperatorSystem::label_degree() const {
  std::optional<int> deg;
  for (const auto& [key, t] : entries_)
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v) {
        int d = entry_label_degree(key, w, o);
        if (deg && *deg != d)
          throw Error(ErrorCode::InhomogeneousLabelDegree,
                      "entry " + key.label.str() + " has label degree " + std::to_string(d) + ", expected " +
                          std::to_string(*deg));
        deg = d;
      }
  return deg;
}

OperatorSystem OperatorSystem::scaled(const Rational& c) const {
  OperatorSystem r(source_, target_, cutoff_, arity_bound_, rcc_);
  if (c.is_zero()) return r;
  r.entries_ = entries_;
  for (auto& [key, t] : r.entries_)
    for (auto& [w, v] : t)
      for (auto& [o, x] : v) x *= c;
  return r;
}

OperatorSystem OperatorSystem::truncated(int max_arity, const Rational& cutoff) const {
  OperatorSystem r(source_, target_, min(cutoff, cutoff_).value(), std::min(max_arity, arity_bound_), rcc_);
  for (const auto& [key, t] : entries_)
    if (key.arity <= max_arity && key.label.energy <= r.cutoff_) r.entries_.emplace(key, t);
  return r;
}

OperatorSystem OperatorSystem::reliable_part() const { return truncated(arity_bound_, cutoff_); }

std::set<LabelClass> OperatorSystem::labels() const {
  std::set<LabelClass> s;
  for (const auto& [key, t] : entries_) s.insert(key.label);
  return s;
}

RatInf OperatorSystem::min_positive_energy() const {
  RatInf e = RatInf::infinity();
  for (const auto& [key, t] : entries_)
    if (key.label.energy.sign() > 0) e = min(e, RatInf(key.label.energy));
  return e;
}

std::vector<std::string> OperatorSystem::gappedness_violations() const {
  std::vector<std::string> out;
  for (const auto& [key, t] : entries_) {
    if (key.label.energy.sign() < 0) out.push_back("negative energy at " + key.label.str());
    if (key.label.energy.is_zero() && !key.label.is_zero())
      out.push_back("zero energy with nonzero label " + key.label.str());
    if (key.arity == 0 && key.label.is_zero() && !rcc_) out.push_back("(0,0) entry outside the reduced complex");
    if (key.label.maslov % 2) out.push_back("odd Maslov index at " + key.label.str());
  }
  return out;
}

bool OperatorSystem::equals(const OperatorSystem& o) const { return describe_difference(o).empty(); }

std::string OperatorSystem::describe_difference(const OperatorSystem& o) const {
  int k = std::min(arity_bound_, o.arity_bound_);
  Rational cut = min(cutoff_, o.cutoff_).value();
  OperatorSystem a = truncated(k, cut), b = o.truncated(k, cut);
  a.add_system(b, Rational(-1));
  if (a.entries_.empty()) return "";
  const auto& [key, t] = *a.entries_.begin();
  std::ostringstream os;
  os << "differs at k=" << key.arity << " beta=" << key.label.str() << " (" << a.entries_.size() << " entries)";
  return os.str();
}

int sharp_sign(const GradedBasis& b, int x) { return ((b.degree(x) - 1) % 2 == 0) ? 1 : -1; }

namespace {

int parity(int x) { return ((x % 2) + 2) % 2; }

int min_bound(int a, int b) { return std::min(a, b); }

int sub_bound(int k, int n) { return k >= kCompleteArity ? kCompleteArity : k - n; }

using OutIndex = std::map<int, std::vector<std::pair<Word, Rational>>>;

OutIndex out_index(const Tensor& t) {
  OutIndex idx;
  for (const auto& [w, v] : t)
    for (const auto& [o, c] : v) idx[o].emplace_back(w, c);
  return idx;
}

struct IndexedEntry {
  int arity;
  LabelClass label;
  OutIndex idx;
};

std::vector<IndexedEntry> index_entries(const OperatorSystem& f) {
  std::vector<IndexedEntry> out;
  for (const auto& [key, t] : f.entries()) out.push_back({key.arity, key.label, out_index(t)});
  return out;
}

bool same_basis(const BasisPtr& a, const BasisPtr& b) { return a == b || a->same_as(*b); }

OperatorSystem braces_impl(const OperatorSystem& g, const std::vector<const OperatorSystem*>& fs, int max_arity) {
  const int n = static_cast<int>(fs.size());
  if (n == 0) return g;
  const GradedBasis& A = *g.source();
  Rational cut = g.cutoff();
  int K = sub_bound(g.arity_bound(), n);
  bool rcc = g.is_rcc();
  std::vector<int> degs(n);
  for (int j = 0; j < n; ++j) {
    const auto& f = *fs[j];
    if (!same_basis(f.source(), g.source()) || !same_basis(f.target(), g.source()))
      throw Error(ErrorCode::BasisMismatch, "brace arguments must be endomorphisms of g's source");
    cut = min(cut, f.cutoff()).value();
    K = min_bound(K, f.arity_bound());
    rcc = rcc || f.is_rcc();
    degs[j] = f.label_degree().value_or(0);
  }
  std::vector<int> s(n, 0);
  for (int j = n - 2; j >= 0; --j) s[j] = s[j + 1] + degs[j + 1];
  const int s0 = (n ? s[0] + degs[0] : 0);
  const int klim = std::min(K, max_arity);
  OperatorSystem res(g.source(), g.target(), cut, K, rcc);
  if (K < 0) return res;

  std::vector<std::vector<IndexedEntry>> fentries(n);
  for (int j = 0; j < n; ++j) fentries[j] = index_entries(*fs[j]);
  // sign of x under sharp^s
  auto sh = [&](int x, int sm) { return parity((A.degree(x) - 1) * sm) ? -1 : 1; };

  std::vector<int> pos(n);
  std::vector<const IndexedEntry*> choice(n);
  for (const auto& [gkey, gt] : g.entries()) {
    const int kg = gkey.arity;
    if (kg < n || gkey.label.energy > cut) continue;
    // choose entries by recursion with pruning, then positions
    std::function<void(int, int, LabelClass)> choose = [&](int j, int karity, LabelClass lab) {
      if (j == n) {
        if (karity > klim) return;
        // all position combinations
        std::function<void(int, int)> place = [&](int jj, int start) {
          if (jj == n) {
            for (const auto& [tg, vg] : gt) {
              std::vector<std::pair<Word, Rational>> partial{{Word{}, Rational(1)}};
              int jp = 0;
              for (int p = 0; p < kg && !partial.empty(); ++p) {
                if (jp < n && pos[jp] == p) {
                  auto it = choice[jp]->idx.find(tg[p]);
                  std::vector<std::pair<Word, Rational>> next;
                  if (it != choice[jp]->idx.end()) {
                    for (const auto& [pw, pc] : partial)
                      for (const auto& [fw, fc] : it->second) {
                        int sg = 1;
                        for (int x : fw) sg *= sh(x, s[jp]);
                        Word w = pw;
                        w.insert(w.end(), fw.begin(), fw.end());
                        next.emplace_back(std::move(w), pc * fc * Rational(sg));
                      }
                  }
                  partial = std::move(next);
                  ++jp;
                } else {
                  int sm = jp == 0 ? s0 : s[jp - 1];
                  int sg = sh(tg[p], sm);
                  for (auto& [pw, pc] : partial) {
                    pw.push_back(tg[p]);
                    if (sg < 0) pc = -pc;
                  }
                }
              }
              for (const auto& [pw, pc] : partial) res.add(karity, lab, pw, vg, pc);
            }
            return;
          }
          for (int p = start; p <= kg - (n - jj); ++p) {
            pos[jj] = p;
            place(jj + 1, p + 1);
          }
        };
        place(0, 0);
        return;
      }
      for (const auto& e : fentries[j]) {
        LabelClass nl = lab + e.label;
        if (nl.energy > cut) continue;
        int na = karity + e.arity - 1;
        // remaining f's add at least -1 each
        if (na - (n - 1 - j) > klim) continue;
        choice[j] = &e;
        choose(j + 1, na, nl);
      }
    };
    choose(0, kg, gkey.label);
  }
  return res;
}

}  // namespace

OperatorSystem identity_system(const BasisPtr& basis, const Rational& cutoff) {
  OperatorSystem id(basis, cutoff);
  for (int i = 0; i < basis->dim(); ++i) id.add(1, LabelClass::zero(basis->rank()), {i}, i, Rational(1));
  return id;
}

OperatorSystem unit_cochain(const BasisPtr& basis, const Rational& cutoff) {
  OperatorSystem e(basis, cutoff, kCompleteArity, true);
  e.add(0, LabelClass::zero(basis->rank()), {}, basis->unit(), Rational(1));
  return e;
}

OperatorSystem braces(const OperatorSystem& g, const std::vector<const OperatorSystem*>& fs) {
  return braces_impl(g, fs, kCompleteArity);
}

OperatorSystem braces(const OperatorSystem& g, const std::vector<OperatorSystem>& fs) {
  std::vector<const OperatorSystem*> ps;
  for (const auto& f : fs) ps.push_back(&f);
  return braces_impl(g, ps, kCompleteArity);
}

OperatorSystem compose(const OperatorSystem& g, const OperatorSystem& f) {
  if (!same_basis(f.target(), g.source())) throw Error(ErrorCode::BasisMismatch, "f's target is not g's source");
  if (f.is_rcc() && g.is_rcc()) throw Error(ErrorCode::InvalidArgument, "composition of two reduced cochains");
  RatInf e0 = RatInf::infinity();
  for (const auto& [key, t] : f.entries()) {
    if (key.arity != 0) continue;
    if (key.label.is_zero()) throw Error(ErrorCode::CurvedRightFactor, "right factor has a (0,0) entry");
    e0 = min(e0, RatInf(key.label.energy));
  }
  Rational cut = min(g.cutoff(), f.cutoff()).value();
  int K = f.arity_bound();
  if (g.arity_bound() < kCompleteArity) {
    int extra = e0.is_inf() ? 0 : static_cast<int>((cut / e0.value()).floor());
    K = std::min(K, g.arity_bound() - extra);
  }
  OperatorSystem res(f.source(), g.target(), cut, K, g.is_rcc() || f.is_rcc());
  if (K < 0) return res;
  auto fe = index_entries(f);
  for (const auto& [gkey, gt] : g.entries()) {
    const int l = gkey.arity;
    if (gkey.label.energy > cut) continue;
    std::vector<const IndexedEntry*> choice(l);
    std::function<void(int, int, LabelClass)> choose = [&](int p, int k, LabelClass lab) {
      if (p == l) {
        for (const auto& [tg, vg] : gt) {
          std::vector<std::pair<Word, Rational>> partial{{Word{}, Rational(1)}};
          for (int q = 0; q < l && !partial.empty(); ++q) {
            auto it = choice[q]->idx.find(tg[q]);
            std::vector<std::pair<Word, Rational>> next;
            if (it != choice[q]->idx.end())
              for (const auto& [pw, pc] : partial)
                for (const auto& [fw, fc] : it->second) {
                  Word w = pw;
                  w.insert(w.end(), fw.begin(), fw.end());
                  next.emplace_back(std::move(w), pc * fc);
                }
            partial = std::move(next);
          }
          for (const auto& [pw, pc] : partial) res.add(k, lab, pw, vg, pc);
        }
        return;
      }
      for (const auto& e : fe) {
        LabelClass nl = lab + e.label;
        if (nl.energy > cut) continue;
        if (k + e.arity > K) continue;
        choice[p] = &e;
        choose(p + 1, k + e.arity, nl);
      }
    };
    choose(0, 0, gkey.label);
  }
  return res;
}

OperatorSystem bracket(const OperatorSystem& f, const OperatorSystem& g) {
  int df = f.label_degree().value_or(0), dg = g.label_degree().value_or(0);
  OperatorSystem r = braces(f, std::vector<const OperatorSystem*>{&g});
  r.add_system(braces(g, std::vector<const OperatorSystem*>{&f}), Rational(parity(df * dg) ? 1 : -1));
  return r;
}

OperatorSystem hochschild_delta(const OperatorSystem& m, const OperatorSystem& f) {
  auto d = m.label_degree();
  if (d && *d != 1) throw Error(ErrorCode::NotAInfinity, "structure has label degree " + std::to_string(*d));
  return bracket(m, f);
}

OperatorSystem cup(const OperatorSystem& m, const OperatorSystem& f, const OperatorSystem& g) {
  auto d = m.label_degree();
  if (d && *d != 1) throw Error(ErrorCode::NotAInfinity, "structure has label degree " + std::to_string(*d));
  int df = f.label_degree().value_or(0);
  return braces(m, std::vector<const OperatorSystem*>{&f, &g}).scaled(Rational(parity(df + 1) ? -1 : 1));
}

OperatorSystem act(const Rational& a_energy, int a_chern, const OperatorSystem& f) {
  OperatorSystem r(f.source(), f.target(), f.cutoff() + (a_energy.sign() > 0 ? a_energy : Rational(0)),
                   f.arity_bound(), f.is_rcc());
  for (const auto& [key, t] : f.entries()) {
    LabelClass l = key.label;
    l.energy += a_energy;
    l.maslov += 2 * a_chern;
    if (l.energy.sign() < 0) throw Error(ErrorCode::NegativeEnergy, "t^A shifts " + key.label.str() + " below 0");
    for (const auto& [w, v] : t) r.add(key.arity, l, w, v);
  }
  return r;
}

std::vector<std::string> rcc_violations(const OperatorSystem& f) {
  std::vector<std::string> out;
  const int u = f.source()->unit();
  for (const auto& [key, t] : f.entries())
    for (const auto& [w, v] : t)
      if (std::find(w.begin(), w.end(), u) != w.end())
        out.push_back("entry k=" + std::to_string(key.arity) + " " + key.label.str() + " is nonzero on the unit");
  return out;
}

std::string AinfReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  if (!violations.empty()) {
    const auto& v = violations.front();
    os << "; first: " << v.identity << " at k=" << v.arity << " beta=" << v.label.str();
    if (!v.detail.empty()) os << " (" << v.detail << ")";
  }
  return os.str();
}

namespace {

void report_nonzero(AinfReport& rep, const std::string& what, const OperatorSystem& s, int max_arity) {
  for (const auto& [key, t] : s.entries()) {
    if (key.arity > max_arity || key.arity > s.arity_bound() || key.label.energy > s.cutoff()) continue;
    rep.ok = false;
    rep.violations.push_back({what, key.arity, key.label, std::to_string(t.size()) + " nonzero word(s)"});
  }
}

}  // namespace

AinfReport check_divisor_axiom(const OperatorSystem& t, int max_arity) {
  AinfReport rep;
  const auto& basis = *t.source();
  int K = std::min(max_arity, sub_bound(t.arity_bound(), 1));
  for (const auto& [b, pairing] : basis.h1()) {
    std::map<EntryKey, Tensor> lhs;
    for (const auto& [key, tens] : t.entries()) {
      if (key.arity < 1 || key.arity - 1 > K) continue;
      for (const auto& [w, v] : tens)
        for (int i = 0; i < key.arity; ++i) {
          if (w[i] != b) continue;
          Word rest = w;
          rest.erase(rest.begin() + i);
          tensor_add(lhs[EntryKey{key.arity - 1, key.label}], rest, v);
        }
    }
    for (const auto& [key, tens] : t.entries()) {
      if (key.arity > K) continue;
      if (key.arity == 0 && key.label.is_zero()) continue;
      int cap = 0;
      for (std::size_t i = 0; i < pairing.size(); ++i) cap += pairing[i] * key.label.boundary[i];
      for (const auto& [w, v] : tens) tensor_add(lhs[key], w, v, Rational(-cap));
    }
    for (const auto& [key, tens] : lhs) {
      if (tens.empty() || (key.arity == 0 && key.label.is_zero())) continue;
      rep.ok = false;
      rep.violations.push_back({"divisor axiom for " + basis.name(b), key.arity, key.label, ""});
    }
  }
  return rep;
}

AinfReport check_cyclic_unitality(const OperatorSystem& t, int max_arity) {
  AinfReport rep;
  const auto& basis = *t.source();
  int K = std::min(max_arity, sub_bound(t.arity_bound(), 1));
  for (int e = 0; e < basis.dim(); ++e) {
    if (basis.degree(e) != 0) continue;
    std::map<EntryKey, Tensor> lhs;
    for (const auto& [key, tens] : t.entries()) {
      if (key.arity < 1 || key.arity - 1 > K) continue;
      for (const auto& [w, v] : tens) {
        int sg = 1;
        for (int i = 0; i < key.arity; ++i) {
          if (w[i] == e) {
            Word rest = w;
            rest.erase(rest.begin() + i);
            tensor_add(lhs[EntryKey{key.arity - 1, key.label}], rest, v, Rational(sg));
          }
          sg *= sharp_sign(basis, w[i]);
        }
      }
    }
    for (const auto& [key, tens] : lhs) {
      if (tens.empty() || (key.arity == 0 && key.label.is_zero())) continue;
      rep.ok = false;
      rep.violations.push_back({"cyclic unitality for " + basis.name(e), key.arity, key.label, ""});
    }
  }
  return rep;
}

AinfReport check_ainf(const OperatorSystem& m, const AinfCheckOptions& opt) {
  AinfReport rep;
  for (const auto& [key, t] : m.entries())
    for (const auto& [w, v] : t)
      for (const auto& [o, c] : v)
        if (m.entry_label_degree(key, w, o) != 1) {
          rep.ok = false;
          rep.violations.push_back({"label degree 1", key.arity, key.label, "word of length " + std::to_string(w.size())});
          goto degrees_done;
        }
degrees_done:
  for (const auto& g : m.gappedness_violations()) {
    rep.ok = false;
    rep.violations.push_back({"gappedness", 0, LabelClass::zero(m.source()->rank()), g});
  }
  {
    int K = std::min(opt.max_arity, sub_bound(m.arity_bound(), 1));
    OperatorSystem mm = braces_impl(m, {&m}, K);
    report_nonzero(rep, "m{m} = 0", mm, K);
  }
  if (opt.unitality) {
    const auto& B = *m.source();
    const int u = B.unit();
    const LabelClass z = LabelClass::zero(B.rank());
    if (!m.apply(1, z, {u}).empty()) {
      rep.ok = false;
      rep.violations.push_back({"unitality (1) m_{1,0}(1) = 0", 1, z, ""});
    }
    for (int x = 0; x < B.dim(); ++x) {
      SparseVec ex{{x, Rational(1)}};
      SparseVec l = m.apply(2, z, {u, x});
      SparseVec r = m.apply(2, z, {x, u});
      vec_add(l, ex, Rational(-1));
      SparseVec r2;
      vec_add(r2, r, Rational(parity(B.degree(x)) ? -1 : 1));
      vec_add(r2, ex, Rational(-1));
      if (!l.empty() || !r2.empty()) {
        rep.ok = false;
        rep.violations.push_back({"unitality (2) for " + B.name(x), 2, z, ""});
      }
    }
    for (const auto& [key, t] : m.entries()) {
      if (key.label.is_zero() && (key.arity == 1 || key.arity == 2)) continue;
      for (const auto& [w, v] : t)
        if (std::find(w.begin(), w.end(), u) != w.end()) {
          rep.ok = false;
          rep.violations.push_back({"unitality (3)", key.arity, key.label, ""});
          break;
        }
    }
  }
  if (opt.divisor) {
    auto d = check_divisor_axiom(m, opt.max_arity);
    rep.ok = rep.ok && d.ok;
    rep.violations.insert(rep.violations.end(), d.violations.begin(), d.violations.end());
  }
  if (opt.cyclic) {
    auto d = check_cyclic_unitality(m, opt.max_arity);
    rep.ok = rep.ok && d.ok;
    rep.violations.insert(rep.violations.end(), d.violations.begin(), d.violations.end());
  }
  return rep;
}

AinfReport check_morphism(const OperatorSystem& m_big, const OperatorSystem& f, const OperatorSystem& m_small) {
  AinfReport rep;
  OperatorSystem lhs = compose(m_big, f);
  OperatorSystem rhs = braces(f, std::vector<const OperatorSystem*>{&m_small});
  int K = std::min(lhs.arity_bound(), rhs.arity_bound());
  Rational cut = min(lhs.cutoff(), rhs.cutoff()).value();
  OperatorSystem diff = lhs.truncated(K, cut);
  diff.add_system(rhs.truncated(K, cut), Rational(-1));
  report_nonzero(rep, "m <> f = f{m'}", diff, K);
  return rep;
}

AinfReport check_left_inverse(const OperatorSystem& p, const OperatorSystem& i) {
  AinfReport rep;
  std::set<Rational> levels{Rational(0)};
  for (const auto& l : p.labels()) levels.insert(l.energy);
  for (const auto& l : i.labels()) levels.insert(l.energy);
  const Rational cut = min(p.cutoff(), i.cutoff()).value();
  for (const auto& E : levels) {
    if (E > cut) break;
    OperatorSystem c = compose(p.truncated(kCompleteArity, E), i.truncated(kCompleteArity, E));
    OperatorSystem id = identity_system(i.source(), E);
    c.add_system(id, Rational(-1));
    for (const auto& [key, t] : c.entries()) {
      if (key.arity > c.arity_bound() || key.label.energy != E) continue;
      rep.ok = false;
      rep.violations.push_back({"p <> i = id", key.arity, key.label, "energy level " + E.str()});
    }
  }
  return rep;
}

namespace {

SparseVec lin_apply(const LinearMap& L, const SparseVec& v) {
  SparseVec out;
  for (const auto& [k, c] : v) {
    auto it = L.find(k);
    if (it != L.end()) vec_add(out, it->second, c);
  }
  return out;
}

LinearMap lin_compose(const LinearMap& a, const LinearMap& b, int dim) {
  LinearMap out;
  for (int x = 0; x < dim; ++x) {
    auto it = b.find(x);
    if (it == b.end()) continue;
    SparseVec y = lin_apply(a, it->second);
    if (!y.empty()) out[x] = y;
  }
  return out;
}

}  // namespace

std::vector<std::string> contraction_violations(const Contraction& con, const OperatorSystem& m_chain) {
  std::vector<std::string> out;
  const int nb = con.big->dim(), ns = con.small->dim();
  LinearMap d;
  if (const Tensor* t = m_chain.find(1, LabelClass::zero(con.big->rank())))
    for (const auto& [w, v] : *t) d[w[0]] = v;
  for (const auto& [x, v] : con.i)
    for (const auto& [o, c] : v)
      if (con.big->degree(o) != con.small->degree(x)) out.push_back("i is not of degree 0");
  for (const auto& [x, v] : con.pi)
    for (const auto& [o, c] : v)
      if (con.small->degree(o) != con.big->degree(x)) out.push_back("pi is not of degree 0");
  for (const auto& [x, v] : con.G)
    for (const auto& [o, c] : v)
      if (con.big->degree(o) != con.big->degree(x) - 1) out.push_back("G is not of degree -1");
  auto ip = lin_compose(con.i, con.pi, nb);
  auto dG = lin_compose(d, con.G, nb);
  auto Gd = lin_compose(con.G, d, nb);
  for (int x = 0; x < nb; ++x) {
    SparseVec v = ip.count(x) ? ip[x] : SparseVec{};
    vec_add(v, SparseVec{{x, Rational(1)}}, Rational(-1));
    if (dG.count(x)) vec_add(v, dG[x], Rational(-1));
    if (Gd.count(x)) vec_add(v, Gd[x], Rational(-1));
    if (!v.empty()) {
      out.push_back("i pi - id != dG + Gd on " + con.big->name(x));
      break;
    }
  }
  auto pi_i = lin_compose(con.pi, con.i, ns);
  for (int x = 0; x < ns; ++x) {
    SparseVec v = pi_i.count(x) ? pi_i[x] : SparseVec{};
    vec_add(v, SparseVec{{x, Rational(1)}}, Rational(-1));
    if (!v.empty()) {
      out.push_back("pi i != id on " + con.small->name(x));
      break;
    }
  }
  if (!lin_compose(con.G, con.G, nb).empty()) out.push_back("G G != 0");
  if (!lin_compose(con.G, con.i, ns).empty()) out.push_back("G i != 0");
  if (!lin_compose(con.pi, con.G, nb).empty()) out.push_back("pi G != 0");
  return out;
}

namespace {

struct BarKey {
  LabelClass label;
  Word word;
  friend bool operator==(const BarKey&, const BarKey&) = default;
  friend auto operator<=>(const BarKey& a, const BarKey& b) {
    if (auto c = a.label <=> b.label; c != 0) return c;
    return a.word <=> b.word;
  }
};
using Bar = std::map<BarKey, Rational>;

void bar_add(Bar& b, const BarKey& k, const Rational& c) {
  if (c.is_zero()) return;
  auto it = b.find(k);
  if (it == b.end()) {
    b.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) b.erase(it);
  }
}

class Hpl {
 public:
  Hpl(const OperatorSystem& m, const Contraction& con, int max_len)
      : m_(m), con_(con), big_(*con.big), cut_(m.cutoff()), max_len_(max_len) {
    for (const auto& [key, t] : m.entries())
      if (!(key.arity == 1 && key.label.is_zero())) delta_.emplace_back(key, t);
    for (int x = 0; x < big_.dim(); ++x) {
      SparseVec v = lin_apply(con.i, lin_apply(con.pi, SparseVec{{x, Rational(1)}}));
      if (!v.empty()) ip_[x] = v;
    }
  }

  int dsh(int x) const { return big_.degree(x) - 1; }

  Bar delta(const Bar& v) const {
    Bar out;
    for (const auto& [key, c] : v) {
      const Word& t = key.word;
      const int L = static_cast<int>(t.size());
      for (const auto& [mk, T] : delta_) {
        const int a = mk.arity;
        if (a > L) continue;
        if (L - a + 1 > max_len_) continue;
        LabelClass nl = key.label + mk.label;
        if (nl.energy > cut_) continue;
        int sg = 0;
        for (int i = 0; i + a <= L; ++i) {
          if (i > 0) sg += dsh(t[i - 1]);
          Word sub(t.begin() + i, t.begin() + i + a);
          auto it = T.find(sub);
          if (it == T.end()) continue;
          Rational sc = parity(sg) ? -c : c;
          for (const auto& [o, oc] : it->second) {
            Word w(t.begin(), t.begin() + i);
            w.push_back(o);
            w.insert(w.end(), t.begin() + i + a, t.end());
            bar_add(out, BarKey{nl, std::move(w)}, sc * oc);
          }
        }
      }
    }
    return out;
  }

  // sum over a of 1^a (x) G (x) (i pi)^rest
  Bar H(const Bar& v) const {
    Bar out;
    for (const auto& [key, c] : v) {
      const Word& t = key.word;
      const int L = static_cast<int>(t.size());
      int sg = 0;
      for (int a = 0; a < L; ++a) {
        if (a > 0) sg += dsh(t[a - 1]);
        auto g = con_.G.find(t[a]);
        if (g == con_.G.end()) continue;
        std::vector<std::pair<Word, Rational>> partial;
        Word head(t.begin(), t.begin() + a);
        for (const auto& [o, oc] : g->second) {
          Word w = head;
          w.push_back(o);
          partial.emplace_back(std::move(w), (parity(sg) ? -c : c) * oc);
        }
        for (int q = a + 1; q < L && !partial.empty(); ++q) {
          auto it = ip_.find(t[q]);
          if (it == ip_.end()) {
            partial.clear();
            break;
          }
          std::vector<std::pair<Word, Rational>> next;
          for (const auto& [pw, pc] : partial)
            for (const auto& [o, oc] : it->second) {
              Word w = pw;
              w.push_back(o);
              next.emplace_back(std::move(w), pc * oc);
            }
          partial = std::move(next);
        }
        for (const auto& [pw, pc] : partial) bar_add(out, BarKey{key.label, pw}, pc);
      }
    }
    return out;
  }

  Bar A(const Bar& v) const {
    Bar total;
    Bar cur = delta(v);
    while (!cur.empty()) {
      for (const auto& [k, c] : cur) bar_add(total, k, c);
      cur = delta(H(cur));
    }
    return total;
  }

  static Bar tensor_map(const LinearMap& M, const Bar& v) {
    Bar out;
    for (const auto& [key, c] : v) {
      std::vector<std::pair<Word, Rational>> partial{{Word{}, c}};
      for (int x : key.word) {
        auto it = M.find(x);
        if (it == M.end()) {
          partial.clear();
          break;
        }
        std::vector<std::pair<Word, Rational>> next;
        for (const auto& [pw, pc] : partial)
          for (const auto& [o, oc] : it->second) {
            Word w = pw;
            w.push_back(o);
            next.emplace_back(std::move(w), pc * oc);
          }
        partial = std::move(next);
      }
      for (const auto& [pw, pc] : partial) bar_add(out, BarKey{key.label, pw}, pc);
    }
    return out;
  }

 private:
  const OperatorSystem& m_;
  const Contraction& con_;
  const GradedBasis& big_;
  Rational cut_;
  int max_len_;
  std::vector<std::pair<EntryKey, Tensor>> delta_;
  LinearMap ip_;
};

void all_words(int dim, int k, const std::function<void(const Word&)>& fn) {
  Word w(k, 0);
  std::function<void(int)> rec = [&](int p) {
    if (p == k) {
      fn(w);
      return;
    }
    for (int x = 0; x < dim; ++x) {
      w[p] = x;
      rec(p + 1);
    }
  };
  rec(0);
}

}  // namespace

HplResult hpl_minimal_model(const OperatorSystem& m_chain, const Contraction& con, const HplOptions& opt) {
  if (!same_basis(m_chain.source(), con.big)) throw Error(ErrorCode::BasisMismatch, "contraction is on another basis");
  auto bad = contraction_violations(con, m_chain);
  if (!bad.empty()) throw Error(ErrorCode::ContractionSideConditionViolated, bad.front());
  auto d = m_chain.label_degree();
  if (d && *d != 1) throw Error(ErrorCode::NotAInfinity, "chain structure has label degree " + std::to_string(*d));
  const Rational cut = m_chain.cutoff();
  RatInf e0 = RatInf::infinity();
  for (const auto& [key, t] : m_chain.entries())
    if (key.arity == 0) e0 = min(e0, RatInf(key.label.energy));
  const int extra = e0.is_inf() || e0.value().is_zero() ? 0 : static_cast<int>((cut / e0.value()).floor());
  int K = opt.arity, Kp = opt.p_arity;
  if (m_chain.arity_bound() < kCompleteArity) {
    K = std::min(K, m_chain.arity_bound() - extra);
    Kp = std::min(Kp, m_chain.arity_bound() - extra);
  }
  const int max_len = std::max(opt.arity, opt.p_arity) + extra + 1;
  Hpl h(m_chain, con, max_len);
  const LabelClass z = LabelClass::zero(con.big->rank());
  HplResult r{OperatorSystem(con.small, cut, K), OperatorSystem(con.small, con.big, cut, K),
              OperatorSystem(con.big, con.small, cut, Kp)};
  for (int k = 0; k <= K; ++k) {
    all_words(con.small->dim(), k, [&](const Word& t) {
      Bar y{{BarKey{z, t}, Rational(1)}};
      Bar Iy = Hpl::tensor_map(con.i, y);
      Bar AI = h.A(Iy);
      for (const auto& [key, c] : AI) {
        if (key.word.size() != 1) continue;
        auto it = con.pi.find(key.word[0]);
        if (it == con.pi.end()) continue;
        r.m_min.add(k, key.label, t, it->second, c);
      }
      Bar iy = Iy;
      for (const auto& [key, c] : h.H(AI)) bar_add(iy, key, c);
      for (const auto& [key, c] : iy)
        if (key.word.size() == 1) r.i_morph.add(k, key.label, t, key.word[0], c);
    });
  }
  for (int k = 0; k <= Kp; ++k) {
    all_words(con.big->dim(), k, [&](const Word& t) {
      Bar x{{BarKey{z, t}, Rational(1)}};
      Bar px = Hpl::tensor_map(con.pi, x);
      Bar hx = h.H(x);
      if (!hx.empty())
        for (const auto& [key, c] : Hpl::tensor_map(con.pi, h.A(hx))) bar_add(px, key, c);
      for (const auto& [key, c] : px)
        if (key.word.size() == 1) r.p_morph.add(k, key.label, t, key.word[0], c);
    });
  }
  return r;
}

namespace {

using nlohmann::json;

json basis_json(const GradedBasis& b) {
  json el = json::array();
  for (const auto& e : b.elements()) el.push_back({{"name", e.name}, {"degree", e.degree}});
  json h1 = json::array();
  for (const auto& [i, v] : b.h1()) h1.push_back({{"index", i}, {"pairing", v}});
  return {{"elements", el}, {"unit", b.unit()}, {"rank", b.rank()}, {"h1", h1}};
}

BasisPtr basis_from_json(const json& j) {
  std::vector<BasisElement> el;
  for (const auto& e : j.at("elements")) el.push_back({e.at("name").get<std::string>(), e.at("degree").get<int>()});
  auto b = std::make_shared<GradedBasis>(std::move(el), j.at("unit").get<int>(), j.at("rank").get<int>());
  std::map<int, Exponent> h1;
  for (const auto& e : j.at("h1")) h1[e.at("index").get<int>()] = e.at("pairing").get<Exponent>();
  b->set_h1(std::move(h1));
  return b;
}

}  // namespace

std::string to_json(const OperatorSystem& s) {
  json j;
  j["format"] = "nonarch-operator-system";
  j["version"] = 1;
  j["source"] = basis_json(*s.source());
  j["target"] = basis_json(*s.target());
  j["cutoff"] = s.cutoff().str();
  if (s.arity_bound() >= kCompleteArity)
    j["arity_bound"] = "complete";
  else
    j["arity_bound"] = s.arity_bound();
  j["rcc"] = s.is_rcc();
  json entries = json::array();
  for (const auto& [key, t] : s.entries()) {
    json terms = json::array();
    for (const auto& [w, v] : t) {
      json out = json::array();
      for (const auto& [o, c] : v) out.push_back({o, c.str()});
      terms.push_back({w, out});
    }
    entries.push_back({{"arity", key.arity},
                       {"label", {key.label.energy.str(), key.label.maslov, key.label.boundary}},
                       {"terms", terms}});
  }
  j["entries"] = entries;
  return j.dump(1);
}

OperatorSystem operator_system_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad operator system JSON: ") + e.what());
  }
  try {
    BasisPtr src = basis_from_json(j.at("source"));
    BasisPtr tgt = basis_from_json(j.at("target"));
    if (tgt->same_as(*src)) tgt = src;
    int K = j.at("arity_bound").is_string() ? kCompleteArity : j.at("arity_bound").get<int>();
    OperatorSystem s(src, tgt, Rational::parse(j.at("cutoff").get<std::string>()), K, j.at("rcc").get<bool>());
    for (const auto& e : j.at("entries")) {
      const auto& l = e.at("label");
      LabelClass lab{Rational::parse(l.at(0).get<std::string>()), l.at(1).get<int>(), l.at(2).get<Exponent>()};
      if (static_cast<int>(lab.boundary.size()) != src->rank())
        throw Error(ErrorCode::RankMismatch, "label boundary has the wrong rank");
      int k = e.at("arity").get<int>();
      for (const auto& term : e.at("terms")) {
        Word w = term.at(0).get<Word>();
        for (int x : w)
          if (x < 0 || x >= src->dim()) throw Error(ErrorCode::InvalidArgument, "input index out of range");
        SparseVec v;
        for (const auto& oc : term.at(1)) {
          int o = oc.at(0).get<int>();
          if (o < 0 || o >= tgt->dim()) throw Error(ErrorCode::InvalidArgument, "output index out of range");
          v[o] = Rational::parse(oc.at(1).get<std::string>());
        }
        s.add(k, lab, w, v);
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad operator system JSON: ") + e.what());
  }
}

}  // namespace nonarch
