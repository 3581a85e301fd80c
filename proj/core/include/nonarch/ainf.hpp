#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nonarch/rational.hpp"
#include "nonarch/series.hpp"

namespace nonarch {

// Disk class data (E(beta), mu(beta), boundary). Ordered and identified by the triple.
struct LabelClass {
  Rational energy;
  int maslov = 0;
  Exponent boundary;

  static LabelClass zero(int rank) { return {Rational(0), 0, Exponent(rank, 0)}; }
  bool is_zero() const;
  LabelClass operator+(const LabelClass& o) const;
  LabelClass operator-(const LabelClass& o) const;
  friend bool operator==(const LabelClass&, const LabelClass&) = default;
  friend auto operator<=>(const LabelClass& a, const LabelClass& b) {
    if (auto c = a.energy <=> b.energy; c != 0) return c;
    if (auto c = a.maslov <=> b.maslov; c != 0) return c;
    return a.boundary <=> b.boundary;
  }
  std::string str() const;
};

struct BasisElement {
  std::string name;
  int degree;
};

class GradedBasis {
 public:
  GradedBasis(std::vector<BasisElement> elements, int unit, int rank);

  int dim() const { return static_cast<int>(elements_.size()); }
  int rank() const { return rank_; }  // n = rank of pi_1(L)
  int unit() const { return unit_; }
  int degree(int i) const { return elements_[i].degree; }
  const std::string& name(int i) const { return elements_[i].name; }
  int index(const std::string& name) const;  // throws UnknownName
  const std::vector<BasisElement>& elements() const { return elements_; }

  // Closed degree-1 elements b with their cap-pairing vector (used by the divisor axiom).
  void set_h1(std::map<int, Exponent> h1) { h1_ = std::move(h1); }
  const std::map<int, Exponent>& h1() const { return h1_; }

  bool same_as(const GradedBasis& o) const;

 private:
  std::vector<BasisElement> elements_;
  int unit_;
  int rank_;
  std::map<int, Exponent> h1_;
};
using BasisPtr = std::shared_ptr<const GradedBasis>;

using Word = std::vector<int>;
using SparseVec = std::map<int, Rational>;
using Tensor = std::map<Word, SparseVec>;

void vec_add(SparseVec& a, const SparseVec& b, const Rational& c = Rational(1));
void tensor_add(Tensor& t, const Word& w, const SparseVec& v, const Rational& c = Rational(1));

struct EntryKey {
  int arity;
  LabelClass label;
  friend bool operator==(const EntryKey&, const EntryKey&) = default;
  friend auto operator<=>(const EntryKey& a, const EntryKey& b) {
    if (auto c = a.label <=> b.label; c != 0) return c;
    return a.arity <=> b.arity;
  }
};

constexpr int kCompleteArity = std::numeric_limits<int>::max() / 4;

// (k, beta)-indexed multilinear maps from source^{(x) k} to target. Entries are
// exact rationals. arity_bound says up to which arity the system is known;
// kCompleteArity means every entry is present.
class OperatorSystem {
 public:
  OperatorSystem(BasisPtr basis, Rational cutoff, int arity_bound = kCompleteArity, bool rcc = false);
  OperatorSystem(BasisPtr source, BasisPtr target, Rational cutoff, int arity_bound = kCompleteArity,
                 bool rcc = false);

  const BasisPtr& source() const { return source_; }
  const BasisPtr& target() const { return target_; }
  const Rational& cutoff() const { return cutoff_; }
  int arity_bound() const { return arity_bound_; }
  bool is_rcc() const { return rcc_; }
  void set_rcc(bool v) { rcc_ = v; }
  void set_arity_bound(int k) { arity_bound_ = k; }
  const std::map<EntryKey, Tensor>& entries() const { return entries_; }

  void add(int k, const LabelClass& label, const Word& w, const SparseVec& v, const Rational& c = Rational(1));
  void add(int k, const LabelClass& label, const Word& w, int out, const Rational& c);
  void add_system(const OperatorSystem& o, const Rational& c = Rational(1));
  const Tensor* find(int k, const LabelClass& label) const;
  SparseVec apply(int k, const LabelClass& label, const Word& w) const;

  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const;
  // Common label degree of all entries, nullopt when empty. Throws InhomogeneousLabelDegree.
  std::optional<int> label_degree() const;
  int entry_label_degree(const EntryKey& key, const Word& w, int out) const;
  OperatorSystem scaled(const Rational& c) const;
  OperatorSystem truncated(int max_arity, const Rational& cutoff) const;
  // entries with energy <= cutoff and arity <= arity_bound only
  OperatorSystem reliable_part() const;
  std::set<LabelClass> labels() const;
  RatInf min_positive_energy() const;
  std::vector<std::string> gappedness_violations() const;
  // Entrywise comparison on the reliable parts of both.
  bool equals(const OperatorSystem& o) const;
  std::string describe_difference(const OperatorSystem& o) const;

 private:
  BasisPtr source_, target_;
  Rational cutoff_;
  int arity_bound_;
  bool rcc_;
  std::map<EntryKey, Tensor> entries_;
};

// (-1)^{deg x - 1}
int sharp_sign(const GradedBasis& b, int x);

OperatorSystem identity_system(const BasisPtr& basis, const Rational& cutoff);
OperatorSystem unit_cochain(const BasisPtr& basis, const Rational& cutoff);

// g{f_1,...,f_n} with the sharp twist on identity slots.
OperatorSystem braces(const OperatorSystem& g, const std::vector<const OperatorSystem*>& fs);
OperatorSystem braces(const OperatorSystem& g, const std::vector<OperatorSystem>& fs);
// (g <> f)_{k,beta} = sum g_{l,beta0}(f_{k1,beta1}, ..., f_{kl,betal}), l >= 0.
OperatorSystem compose(const OperatorSystem& g, const OperatorSystem& f);
OperatorSystem bracket(const OperatorSystem& f, const OperatorSystem& g);
OperatorSystem hochschild_delta(const OperatorSystem& m, const OperatorSystem& f);
OperatorSystem cup(const OperatorSystem& m, const OperatorSystem& f, const OperatorSystem& g);
// t^A . f: energy += E(A), maslov += 2 c1(A).
OperatorSystem act(const Rational& a_energy, int a_chern, const OperatorSystem& f);

// Every entry annihilates the unit in every slot.
std::vector<std::string> rcc_violations(const OperatorSystem& f);

struct Violation {
  std::string identity;
  int arity;
  LabelClass label;
  std::string detail;
};

struct AinfReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::string summary() const;
};

struct AinfCheckOptions {
  bool unitality = true;
  bool divisor = false;
  bool cyclic = false;
  int max_arity = kCompleteArity;  // further bound on checked arities
};

AinfReport check_ainf(const OperatorSystem& m, const AinfCheckOptions& opt = {});
AinfReport check_divisor_axiom(const OperatorSystem& t, int max_arity = kCompleteArity);
AinfReport check_cyclic_unitality(const OperatorSystem& t, int max_arity = kCompleteArity);
// m_chain <> f = f{m_small}
AinfReport check_morphism(const OperatorSystem& m_big, const OperatorSystem& f, const OperatorSystem& m_small);

// p <> i = id, checked on each energy level E separately with both factors
// truncated to E so that higher arities stay reliable at low energy.
AinfReport check_left_inverse(const OperatorSystem& p, const OperatorSystem& i);

using LinearMap = std::map<int, SparseVec>;

struct Contraction {
  BasisPtr big;
  BasisPtr small;
  LinearMap i;       // small -> big
  LinearMap pi;      // big -> small
  LinearMap G;       // big -> big, degree -1
};

// i pi - id = dG + Gd, pi i = id, GG = 0, Gi = 0, pi G = 0; d is m's (1,0) entry.
std::vector<std::string> contraction_violations(const Contraction& con, const OperatorSystem& m_chain);

struct HplResult {
  OperatorSystem m_min;
  OperatorSystem i_morph;
  OperatorSystem p_morph;
};

struct HplOptions {
  int arity = 4;     // arities computed for m_min and i
  int p_arity = 4;   // arities computed for p
};

HplResult hpl_minimal_model(const OperatorSystem& m_chain, const Contraction& con, const HplOptions& opt = {});

// JSON text with rationals as "p/q" strings; round-trips exactly.
std::string to_json(const OperatorSystem& s);
OperatorSystem operator_system_from_json(const std::string& text);

}  // namespace nonarch
