#include "nonarch/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nonarch/errors.hpp"

namespace nonarch {

namespace {

constexpr double kTol = 1e-9;

double dist(const Point3& a, const Point3& b) {
  double d = 0;
  for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

double PsiModel::solve_q2(double q1, double v) const {
  if (inverse_q2) return inverse_q2(q1, v);
  double lo = -1.0, hi = 1.0;
  for (int i = 0; psi(q1, lo) > v; ++i, lo *= 2)
    if (i == 64) throw Error(ErrorCode::NotInImage, "value below the range of psi(q1, .)");
  for (int i = 0; psi(q1, hi) < v; ++i, hi *= 2)
    if (i == 64) throw Error(ErrorCode::NotInImage, "value above the range of psi(q1, .)");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    (psi(q1, mid) < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PsiModel default_psi() {
  PsiModel m;
  m.psi = [](double q1, double q2) { return q2 / 2 + std::sqrt(q1 * q1 + q2 * q2 + 1) / 2; };
  m.inverse_q2 = [](double q1, double v) { return (4 * v * v - q1 * q1 - 1) / (4 * v); };
  return m;
}

MirrorPoint mirror_point(const NovikovScalar& x1, const NovikovScalar& y, const Rational& order) {
  return {(NovikovScalar(1.0) + y) * invert(x1, order), x1, y};
}

bool mirror_point_valid(const MirrorPoint& p, const Rational& order) {
  if (!p.y.has_terms() || !p.x1.has_terms() || !p.x0.has_terms()) return false;
  if (p.x1.valuation().value().sign() <= 0) return false;
  NovikovScalar d = (p.x0 * p.x1 - NovikovScalar(1.0) - p.y).truncate(RatInf(order));
  return !d.has_terms();
}

Point3 embed_j(const PsiModel& psi, const Point2& q) {
  const double a = psi.psi(q[0], q[1]), a0 = psi.psi(q[0], 0.0);
  return {std::min(-a, -a0) + std::min(0.0, q[0]), std::min(a, a0), q[0]};
}

Point3 map_F(const PsiModel& psi, const MirrorPoint& p) {
  const double v0 = p.x0.valuation().value().to_double();
  const double v1 = p.x1.valuation().value().to_double();
  const double vy = p.y.valuation().value().to_double();
  const double a0 = psi.psi(vy, 0.0);
  return {std::min(v0, -a0 + std::min(0.0, vy)), std::min(v1, a0), vy};
}

Point2 solve_f(const PsiModel& psi, const MirrorPoint& p) {
  const Point3 F = map_F(psi, p);
  const double q1 = F[2];
  const double a0 = psi.psi(q1, 0.0);
  const double pinned0 = -a0 + std::min(0.0, q1);
  double q2 = 0;
  if (F[1] < a0 - kTol) {
    if (F[1] <= 0) throw Error(ErrorCode::NotInImage, "second coordinate outside the range of psi");
    q2 = psi.solve_q2(q1, F[1]);
  } else if (F[0] < pinned0 - kTol) {
    q2 = psi.solve_q2(q1, std::min(0.0, q1) - F[0]);
  }
  Point2 q{q1, q2};
  if (dist(embed_j(psi, q), F) > kTol) throw Error(ErrorCode::NotInImage, "F(p) is not in j(R^2)");
  return q;
}

std::vector<MirrorPoint> sample_mirror_points(int count, std::uint64_t seed, const Rational& order) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den(1, 12);
  std::uniform_real_distribution<double> arg(0.0, 2 * std::numbers::pi), mod(0.5, 2.0);
  auto coeff = [&] { return std::polar(mod(rng), arg(rng)); };
  std::vector<MirrorPoint> out;
  while (static_cast<int>(out.size()) < count) {
    const int dy = den(rng), d1 = den(rng);
    const int ny = std::uniform_int_distribution<int>(-3 * dy, 3 * dy)(rng);
    const int n1 = std::uniform_int_distribution<int>(1, 3 * d1)(rng);
    if (ny == 0) continue;
    out.push_back(mirror_point(NovikovScalar::monomial(coeff(), Rational(n1, d1)),
                               NovikovScalar::monomial(coeff(), Rational(ny, dy)), order));
  }
  return out;
}

std::vector<FibrationSample> fibration_sample(const PsiModel& psi, int count, std::uint64_t seed) {
  const Rational order(8);
  std::vector<FibrationSample> out;
  for (const auto& p : sample_mirror_points(count, seed, order)) {
    FibrationSample s;
    s.val_x0 = p.x0.valuation().value();
    s.val_x1 = p.x1.valuation().value();
    s.val_y = p.y.valuation().value();
    const NovikovScalar one_plus_y = NovikovScalar(1.0) + p.y;
    s.valuation_identity = one_plus_y.has_terms() && s.val_x0 + s.val_x1 == one_plus_y.valuation().value();
    s.q = solve_f(psi, p);
    s.residual = dist(embed_j(psi, s.q), map_F(psi, p));
    out.push_back(s);
  }
  return out;
}

std::string fibration_csv(const std::vector<FibrationSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "val_x0,val_x1,val_y,q1,q2,residual\n";
  for (const auto& s : samples)
    os << s.val_x0.str() << ',' << s.val_x1.str() << ',' << s.val_y.str() << ',' << s.q[0] << ',' << s.q[1] << ','
       << s.residual << '\n';
  return os.str();
}

}  // namespace nonarch
