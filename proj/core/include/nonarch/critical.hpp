#pragma once

#include <string>
#include <vector>

#include "nonarch/series.hpp"

namespace nonarch {

// cp2_chart(E), p1xp1_chart(E1, E2), clifford_cpn(n, E). Throws UnknownName.
LaurentSeries builtin_potential(const std::string& name, const std::vector<Rational>& params, const Rational& cutoff);

struct CriticalSystem {
  LaurentSeries potential;
  std::vector<LaurentSeries> derivatives;  // D_{theta_i} W
  std::vector<std::vector<LaurentSeries>> hessian;  // D_j D_i W

  explicit CriticalSystem(LaurentSeries W);
  int rank() const { return potential.rank(); }
};

struct Seed {
  std::vector<Rational> valuations;
  std::vector<Complex> leading;
  TorusPoint point() const;
};

// Leading data of every critical point of a built-in potential.
std::vector<Seed> builtin_seeds(const std::string& name, const std::vector<Rational>& params);

std::vector<NovikovScalar> critical_residual(const LaurentSeries& W, const TorusPoint& y,
                                             std::optional<Rational> target = {});
std::vector<NovikovScalar> critical_residual(const CriticalSystem& sys, const TorusPoint& y, const Rational& target);

// Every residual coordinate is known to vanish below order.
bool residual_vanishes(const std::vector<NovikovScalar>& r, const Rational& order);

// y_j <- y_j (1 + eps_j) with H eps = -D(y). Throws SingularLeadingJacobian or
// NoConvergenceAtOrder.
TorusPoint newton_lift(const CriticalSystem& sys, const Seed& seed, const Rational& order);
TorusPoint newton_lift(const CriticalSystem& sys, const TorusPoint& start, const Rational& order);

// Throws NotCritical when some point fails the residual test at order.
std::vector<NovikovScalar> critical_values(const LaurentSeries& W, const std::vector<TorusPoint>& points,
                                           const Rational& order);

// Solves A x = b over the Novikov field by minimal-valuation pivoting.
std::vector<NovikovScalar> novikov_solve(std::vector<std::vector<NovikovScalar>> A, std::vector<NovikovScalar> b,
                                         const Rational& target);

}  // namespace nonarch
