#pragma once

#include <stdexcept>

#include "qfract/vec3.hpp"

namespace qfract {

// Thrown when a jump is requested in the weight-zero configuration
// (epsilon = 1 with the state exactly antipodal to the detector axis).
// A correct caller never selects this jump: its probability is zero.
class DegenerateJump : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fuzzy spin-direction detector: axis n and sharpness epsilon.
// epsilon = 0 acts as the identity on states (no information), epsilon = 1
// as a sharp projection onto the axis. Positivity restricts epsilon to [0,1].
struct FuzzyProjector {
  UnitVector3 axis;
  double epsilon = 0.0;

  FuzzyProjector(const UnitVector3& n, double eps) : axis(n), epsilon(eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
      throw std::invalid_argument("FuzzyProjector: epsilon must lie in [0,1]");
  }
};

// Result of one jump: the post-jump state r' and its weight
// lambda = (1 + eps^2 + 2 eps (n.r)) / 4.
struct JumpOutcome {
  UnitVector3 new_state;
  double weight = 0.0;
};

inline double jump_weight(const FuzzyProjector& p, const UnitVector3& r) {
  return 0.25 * (1.0 + p.epsilon * p.epsilon + 2.0 * p.epsilon * dot(p.axis, r));
}

// Closed-form Bloch-vector jump
//   r' = ((1 - eps^2) r + 2 eps (1 + eps (n.r)) n) / (1 + eps^2 + 2 eps (n.r)).
// r' stays in span{n, r} and is re-normalized to absorb rounding drift over
// long iteration runs.
inline JumpOutcome jump(const FuzzyProjector& p, const UnitVector3& r) {
  const double eps = p.epsilon;
  const double c = dot(p.axis, r);
  const double denom = 1.0 + eps * eps + 2.0 * eps * c;
  if (denom < 1e-14)
    throw DegenerateJump("jump: zero-weight antipodal case (epsilon=1, n.r=-1)");
  const double sr = (1.0 - eps * eps) / denom;
  const double sn = 2.0 * eps * (1.0 + eps * c) / denom;
  return {UnitVector3::normalized(sr * r.vec() + sn * p.axis.vec()), 0.25 * denom};
}

// New colatitude theta' after a jump toward the axis, for a state at
// colatitude theta from that axis. Angles in radians; theta is zero at the
// axis ("north pole"), pi at the antipode.
double latitude_shift(double epsilon, double theta);

// Colatitude arccos(-epsilon) where the meridian contraction of the jump map
// turns into stretching (the z = -epsilon circle for an axis at the pole).
double equilibrium_latitude(double epsilon);

// Fubini-Study distance between the pure states with Bloch vectors r1, r2:
// arccos(sqrt((1 + r1.r2)/2)). Zero iff equal, pi/2 for antipodal states.
double fubini_study_distance(const UnitVector3& r1, const UnitVector3& r2);

}  // namespace qfract
