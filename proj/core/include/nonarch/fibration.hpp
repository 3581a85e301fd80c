#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nonarch/novikov.hpp"

namespace nonarch {

struct PsiModel {
  std::function<double(double, double)> psi;
  // q2 with psi(q1, q2) = v; bisection on psi when empty
  std::function<double(double, double)> inverse_q2;
  double solve_q2(double q1, double v) const;
};

// psi(q1, q2) = q2/2 + sqrt(q1^2 + q2^2 + 1)/2
PsiModel default_psi();

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;

struct MirrorPoint {
  NovikovScalar x0, x1, y;
};

// x0 = (1 + y) / x1
MirrorPoint mirror_point(const NovikovScalar& x1, const NovikovScalar& y, const Rational& order);
// x0 x1 = 1 + y to truncation, y invertible, val x1 > 0
bool mirror_point_valid(const MirrorPoint& p, const Rational& order);

Point3 embed_j(const PsiModel& psi, const Point2& q);
// Throws TruncatedZero.
Point3 map_F(const PsiModel& psi, const MirrorPoint& p);
// Throws NotInImage.
Point2 solve_f(const PsiModel& psi, const MirrorPoint& p);

struct FibrationSample {
  Rational val_x0, val_x1, val_y;
  Point2 q;
  double residual = 0;       // max |j(f(p)) - F(p)|
  bool valuation_identity;   // val x0 + val x1 == val(1 + y)
};

// Random points with val y in [-3, 3] \ {0} and val x1 in (0, 3], exponents of denominator <= 12.
std::vector<MirrorPoint> sample_mirror_points(int count, std::uint64_t seed, const Rational& order);
std::vector<FibrationSample> fibration_sample(const PsiModel& psi, int count, std::uint64_t seed);
std::string fibration_csv(const std::vector<FibrationSample>& samples);

}  // namespace nonarch
