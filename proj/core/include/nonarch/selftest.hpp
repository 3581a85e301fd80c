#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nonarch/ainf.hpp"
#include "nonarch/series.hpp"
#include "nonarch/wallcross.hpp"

namespace nonarch {

struct SuiteCheck {
  std::string identity;
  int trials = 0;
  int failures = 0;
  std::string counterexample;  // first failure
  bool ok() const { return failures == 0 && trials > 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool ok() const;
};

struct RandomSystemSpec {
  BasisPtr basis;
  std::vector<LabelClass> labels;  // the zero label is always available
  int label_degree = 0;
  int max_arity = 3;
  bool rcc = false;
  double density = 0.3;
  Rational cutoff{2};
};

// Random homogeneous gapped system with integer coefficients in [-3, 3].
OperatorSystem random_operator_system(const RandomSystemSpec& spec, std::mt19937_64& rng);

// 1 to max_terms terms, exponents in [lo, hi] with denominators dividing 12,
// coefficients of modulus in [1/2, 2].
NovikovScalar random_scalar(std::mt19937_64& rng, int max_terms, const Rational& lo, const Rational& hi);

// Leading coefficient modulus 1: a point of U_Lambda^n.
TorusPoint random_unit_point(std::mt19937_64& rng, int n);

// Random Laurent series in n variables, exponents in [-2, 2], scalars of valuation >= min_val.
LaurentSeries random_series(std::mt19937_64& rng, int n, int terms, const Rational& min_val, const Rational& cutoff);

struct RootSample {
  std::vector<NovikovScalar> roots;
  NovikovPolynomial poly;
};
// Product of (lambda - r) over degree random roots with rational exponents.
RootSample random_root_polynomial(std::mt19937_64& rng, int degree);

// lambda in [-1, 1]^n or 0, F with positive valuations.
CoordinateChange random_change(std::mt19937_64& rng, int n, bool zero_lambda, const Rational& cutoff);

// Names: novikov, series, ainf, floer, wallcross. Setting NONARCH_INJECT_FAULT
// in the environment corrupts one sign of the A-infinity structure the ainf
// and floer suites test.
SuiteReport run_selftest(const std::string& suite, std::uint64_t seed, const Rational& cutoff, int trials = 20);
std::vector<std::string> selftest_suites();

}  // namespace nonarch
