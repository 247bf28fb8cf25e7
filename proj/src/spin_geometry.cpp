#include "qfract/spin_geometry.hpp"

#include <algorithm>

namespace qfract {

namespace {
double clamp_cos(double v) { return std::clamp(v, -1.0, 1.0); }
}  // namespace

double latitude_shift(double epsilon, double theta) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("latitude_shift: epsilon must lie in [0,1]");
  const double c = std::cos(theta);
  const double denom = 1.0 + epsilon * epsilon + 2.0 * epsilon * c;
  if (denom < 1e-14) return theta;  // epsilon=1 antipode: fixed point
  const double cp = ((1.0 - epsilon * epsilon) * c + 2.0 * epsilon * (1.0 + epsilon * c)) / denom;
  return std::acos(clamp_cos(cp));
}

double equilibrium_latitude(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("equilibrium_latitude: epsilon must lie in (0,1)");
  return std::acos(-epsilon);
}

double fubini_study_distance(const UnitVector3& r1, const UnitVector3& r2) {
  const double overlap = 0.5 * (1.0 + dot(r1, r2));  // Tr(P(r1) P(r2))
  return std::acos(clamp_cos(std::sqrt(std::max(overlap, 0.0))));
}

}  // namespace qfract
