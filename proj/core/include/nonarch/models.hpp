#pragma once

#include <vector>

#include "nonarch/ainf.hpp"

namespace nonarch {

// Exterior algebra on n degree-1 generators, optionally tensored with the
// acyclic piece R = <1, a, b> (deg a = 1, deg b = 2, d a = b). Basis index is
// r * 2^n + mask with r in {1, a, b}.
class ExteriorAlgebra {
 public:
  ExteriorAlgebra(int n, bool chain);

  int n() const { return n_; }
  bool chain() const { return chain_; }
  const BasisPtr& basis() const { return basis_; }
  int dim() const { return basis_->dim(); }
  int index(unsigned mask, int r = 0) const { return r * (1 << n_) + static_cast<int>(mask); }
  unsigned mask(int i) const { return static_cast<unsigned>(i) & ((1u << n_) - 1); }
  int rpart(int i) const { return i >> n_; }
  int generator(int j) const { return index(1u << j); }

  SparseVec mul(int i, int j) const;
  SparseVec mul(const SparseVec& x, const SparseVec& y) const;
  // contraction with v on the exterior factor, an odd derivation
  SparseVec iota(const Exponent& v, int i) const;
  SparseVec d(int i) const;

 private:
  int n_;
  bool chain_;
  BasisPtr basis_;
};

struct DiskClass {
  Rational energy;
  Exponent boundary;
  Rational weight{1};
  int maslov = 2;
};

std::vector<DiskClass> clifford_cp2_classes(const Rational& E);

// m_{2,0} = (-1)^{deg x1} x1 x2, m_{1,0} = d, and for each class
// m_{0,beta} = w 1, m_{1,beta} = w iota_{dbeta}.
OperatorSystem strict_model(const ExteriorAlgebra& alg, const std::vector<DiskClass>& classes, const Rational& cutoff);

// m_{k,beta}(x) = w/k! prod iota_{dbeta}(x_i) for k <= arity. An A-infinity
// structure when all boundaries are parallel.
OperatorSystem divisor_model(const ExteriorAlgebra& alg, const std::vector<DiskClass>& classes, int arity,
                             const Rational& cutoff);

// Solves m <> f = f{m0} for m label by label, given f with f_{1,0} = id. Every
// label is solved up to arity + floor(cutoff / e_min).
OperatorSystem pushforward(const OperatorSystem& m0, const OperatorSystem& f, int arity);

// i(x) = x (x) 1, pi kills a and b, G(x (x) b) = -(-1)^{deg x} x (x) a.
Contraction torus_contraction(const ExteriorAlgebra& chain, const ExteriorAlgebra& small);

struct DeformedChainModel {
  ExteriorAlgebra small;
  ExteriorAlgebra chain;
  OperatorSystem m_strict;
  OperatorSystem f;
  OperatorSystem m_chain;
  Contraction con;
};

// Strict Clifford-type model on the chain algebra of T^2, pushed forward along
// a gauge f = id + f_{0,gamma} + f_{2,0} + f_{1,gamma'} + f_{2,gamma'}. The first
// three involve the acyclic generator a; f_{2,gamma'}(t1, t2) = t2 survives on
// cohomology. Energies of gamma and gamma' are e.
DeformedChainModel deformed_chain_model(const std::vector<DiskClass>& classes, const Rational& e,
                                        const Rational& cutoff, int arity);

}  // namespace nonarch
