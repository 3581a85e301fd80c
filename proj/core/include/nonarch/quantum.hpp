#pragma once

#include <string>
#include <vector>

#include "nonarch/novikov.hpp"

namespace nonarch {

using Coords = std::vector<NovikovScalar>;
using NovikovMatrix = std::vector<std::vector<NovikovScalar>>;

// Small quantum cohomology ring collapsed to Lambda coefficients.
class QuantumRing {
 public:
  struct Element {
    std::string name;
    int degree;
  };

  QuantumRing(std::vector<Element> basis, int unit);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Element>& basis() const { return basis_; }
  int unit() const { return unit_; }
  const Coords& c1() const { return c1_; }
  void set_c1(Coords c) { c1_ = std::move(c); }

  // basis_i * basis_j
  const Coords& product(int i, int j) const { return table_[i][j]; }
  void set_product(int i, int j, Coords v) { table_[i][j] = std::move(v); }
  Coords multiply(const Coords& a, const Coords& b) const;
  Coords basis_vector(int i) const;

  // Max coefficient distance of (ab)c - a(bc) over basis triples.
  double associativity_defect() const;
  bool unit_laws_hold() const;
  // Degrees of nonzero T^0 structure constants add up.
  bool classical_part_graded() const;

 private:
  std::vector<Element> basis_;
  int unit_;
  std::vector<std::vector<Coords>> table_;
  Coords c1_;
};

QuantumRing qh_projective(int n, const Rational& E);
// Kunneth product with the Koszul sign (-1)^{|b||a'|}.
QuantumRing qh_tensor(const QuantumRing& r1, const QuantumRing& r2);

// Column j holds cls * basis_j.
NovikovMatrix mult_matrix(const QuantumRing& ring, const Coords& cls);

// det(lambda - A) by Berkowitz's division-free recursion; coeffs[i] multiplies lambda^i.
NovikovPolynomial characteristic_polynomial(const NovikovMatrix& a);

std::vector<NovikovScalar> c1_eigenvalues(const QuantumRing& ring, const Rational& order);

struct FolklorePair {
  int critical = 0;
  int eigenvalue = 0;
  double distance = 0;
};

struct FolkloreReport {
  std::vector<FolklorePair> pairs;
  std::vector<int> unmatched;
  std::vector<int> critical_multiplicity;    // per critical value, number of equal critical values
  std::vector<int> eigenvalue_multiplicity;  // likewise for eigenvalues
  bool success() const { return unmatched.empty(); }
};

// Every critical value must match a distinct eigenvalue.
FolkloreReport folklore_match(const std::vector<NovikovScalar>& critical_values,
                              const std::vector<NovikovScalar>& eigenvalues, double tol);

// {"format": "quantum_ring", "basis": [[name, degree]...], "unit": i, "c1": [expr...],
//  "products": [[i, j, [expr...]]...]}; missing products are zero.
QuantumRing quantum_ring_from_json(const std::string& text, const Rational& cutoff);
std::string to_json(const QuantumRing& r);

}  // namespace nonarch
