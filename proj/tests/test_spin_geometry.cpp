#include "qfract/spin_geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "qfract/detector_config.hpp"
#include "qfract/matrix_oracle.hpp"
#include "qfract/rng.hpp"
#include "test_support.hpp"

using namespace qfract;
using qfract::testing::max_component_diff;
using qfract::testing::random_rotation;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const UnitVector3 kNorth = UnitVector3::unchecked(0, 0, 1);
const UnitVector3 kEast = UnitVector3::unchecked(1, 0, 0);
}  // namespace

TEST_CASE("jump from the equator toward the pole") {
  const auto out = jump(FuzzyProjector(kNorth, 0.5), kEast);
  CHECK(out.new_state.x() == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(out.new_state.y() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(out.new_state.z() == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(out.weight == doctest::Approx(0.3125).epsilon(1e-14));

  // Independent route: factor P(n,eps) P(r) P(n,eps) in matrix form.
  const auto oracle = oracle_jump(kNorth, 0.5, kEast);
  CHECK(oracle.lambda == doctest::Approx(out.weight).epsilon(1e-13));
  CHECK(max_component_diff(oracle.new_state, out.new_state) < 1e-12);
}

TEST_CASE("jump fixed point at the detector axis") {
  Xoshiro256PlusPlus rng(7);
  for (int i = 0; i < 100; ++i) {
    const UnitVector3 n = random_unit_vector(rng);
    const double eps = rng.next_double();
    const auto out = jump(FuzzyProjector(n, eps), n);
    CHECK(max_component_diff(out.new_state, n) < 1e-12);
    CHECK(out.weight == doctest::Approx(0.25 * (1 + eps) * (1 + eps)).epsilon(1e-13));
  }
}

TEST_CASE("zero fuzziness is the identity map with weight 1/4") {
  Xoshiro256PlusPlus rng(8);
  for (int i = 0; i < 100; ++i) {
    const UnitVector3 n = random_unit_vector(rng);
    const UnitVector3 r = random_unit_vector(rng);
    const auto out = jump(FuzzyProjector(n, 0.0), r);
    CHECK(max_component_diff(out.new_state, r) < 1e-12);
    CHECK(out.weight == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("sharp projection forgets the prior state") {
  Xoshiro256PlusPlus rng(9);
  const UnitVector3 n = UnitVector3::normalized(0.3, -0.4, 0.6);
  for (int i = 0; i < 100; ++i) {
    const UnitVector3 r = random_unit_vector(rng);
    if (dot(n, r) <= -1.0 + 1e-9) continue;
    CHECK(max_component_diff(jump(FuzzyProjector(n, 1.0), r).new_state, n) < 1e-12);
  }
}

TEST_CASE("degenerate antipodal sharp jump throws") {
  CHECK_THROWS_AS(jump(FuzzyProjector(kNorth, 1.0), -kNorth), DegenerateJump);
  // Just inside epsilon = 1 the jump is still defined.
  CHECK_NOTHROW(jump(FuzzyProjector(kNorth, 1.0 - 1e-6), -kNorth));
}

TEST_CASE("jump weight values and bounds") {
  CHECK(jump_weight(FuzzyProjector(kNorth, 0.5), kNorth) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(jump_weight(FuzzyProjector(kNorth, 1.0), -kNorth) == doctest::Approx(0.0));
  CHECK(jump_weight(FuzzyProjector(kNorth, 0.5), kEast) == doctest::Approx(0.3125).epsilon(1e-15));

  Xoshiro256PlusPlus rng(10);
  for (int i = 0; i < 1000; ++i) {
    const UnitVector3 n = random_unit_vector(rng);
    const UnitVector3 r = random_unit_vector(rng);
    const double eps = rng.next_double();
    const double w = jump_weight(FuzzyProjector(n, eps), r);
    CHECK(w >= 0.25 * (1 - eps) * (1 - eps) - 1e-15);
    CHECK(w <= 0.25 * (1 + eps) * (1 + eps) + 1e-15);
  }
}

TEST_CASE("geometry invariants over random triples") {
  Xoshiro256PlusPlus rng(11);
  for (int i = 0; i < 100000; ++i) {
    const UnitVector3 n = random_unit_vector(rng);
    const UnitVector3 r = random_unit_vector(rng);
    const double eps = rng.next_double();  // [0,1)
    const auto out = jump(FuzzyProjector(n, eps), r);

    // Norm preservation.
    REQUIRE(std::abs(norm(out.new_state.vec()) - 1.0) < 1e-12);
    // Coplanarity: r' lies in span{n, r}.
    REQUIRE(std::abs(dot(cross(n.vec(), r.vec()), out.new_state.vec())) < 1e-12);
    // Monotone attraction toward the axis.
    const double before = dot(n, r), after = dot(n, out.new_state);
    REQUIRE(after >= before - 1e-12);
    if (eps > 1e-3 && std::abs(before) < 0.999) REQUIRE(after > before);
  }
}

TEST_CASE("rotation equivariance") {
  Xoshiro256PlusPlus rng(12);
  for (int i = 0; i < 10000; ++i) {
    const UnitVector3 n = random_unit_vector(rng);
    const UnitVector3 r = random_unit_vector(rng);
    const double eps = rng.next_double();
    const Mat3 rot = random_rotation(rng);
    const UnitVector3 lhs = jump(FuzzyProjector(rot.apply(n), eps), rot.apply(r)).new_state;
    const UnitVector3 rhs = rot.apply(jump(FuzzyProjector(n, eps), r).new_state);
    REQUIRE(max_component_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("weight equals the matrix-oracle trace") {
  Xoshiro256PlusPlus rng(13);
  for (int i = 0; i < 10000; ++i) {
    const UnitVector3 n = random_unit_vector(rng);
    const UnitVector3 r = random_unit_vector(rng);
    const double eps = rng.next_double();
    const Complex2x2 pn = fuzzy_projector(n, eps);
    const double trace = (pn * sharp_projector(r) * pn).trace().real();
    REQUIRE(std::abs(jump_weight(FuzzyProjector(n, eps), r) - trace) < 1e-12);
  }
}

TEST_CASE("latitude shift examples") {
  CHECK(latitude_shift(0.5, kPi / 2) == doctest::Approx(std::acos(0.8)).epsilon(1e-14));
  CHECK(latitude_shift(0.8, 0.0) == doctest::Approx(0.0));
  // acos is ill-conditioned at the endpoint; rounding leaves ~1e-8 there.
  CHECK(latitude_shift(0.3, kPi) == doctest::Approx(kPi).epsilon(1e-7));
  for (double theta : {0.1, 0.9, 1.7, 2.9}) {
    CHECK(latitude_shift(0.0, theta) == doctest::Approx(theta).epsilon(1e-14));
  }
}

TEST_CASE("latitude shift agrees with the jump applied at the pole axis") {
  Xoshiro256PlusPlus rng(14);
  for (int i = 0; i < 10000; ++i) {
    const double theta = kPi * rng.next_double();
    const double eps = rng.next_double();
    const UnitVector3 r =
        UnitVector3::normalized(std::sin(theta), 0.0, std::cos(theta));
    const double expected = std::acos(
        std::clamp(jump(FuzzyProjector(kNorth, eps), r).new_state.z(), -1.0, 1.0));
    REQUIRE(latitude_shift(eps, theta) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("latitude shift is strictly increasing in theta") {
  for (double eps : {0.0, 0.1, 0.5, 0.9, 0.99}) {
    double prev = 0.0;
    for (int k = 1; k < 2000; ++k) {
      const double theta = kPi * k / 2000.0;
      const double cur = latitude_shift(eps, theta);
      REQUIRE(cur > prev);
      REQUIRE(cur <= theta + 1e-12);  // always moves toward the pole
      prev = cur;
    }
  }
}

TEST_CASE("equilibrium latitude is arccos(-epsilon)") {
  CHECK(equilibrium_latitude(0.5) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(equilibrium_latitude(1e-9) == doctest::Approx(kPi / 2).epsilon(1e-7));

  // The shift theta - theta'(theta) peaks there; scan a 1e-4 rad grid.
  for (double eps : {0.3, 0.5, 0.95}) {
    double best_theta = 0.0, best_shift = -1.0;
    for (double theta = 1e-4; theta < kPi; theta += 1e-4) {
      const double shift = theta - latitude_shift(eps, theta);
      if (shift > best_shift) {
        best_shift = shift;
        best_theta = theta;
      }
    }
    CHECK(std::abs(best_theta - equilibrium_latitude(eps)) < 1e-3);
  }
}

TEST_CASE("Fubini-Study distance") {
  const UnitVector3 r = UnitVector3::normalized(0.2, -0.5, 0.7);
  CHECK(fubini_study_distance(r, r) == doctest::Approx(0.0));
  // sqrt of the near-zero overlap amplifies the unit-norm rounding to ~1e-8.
  CHECK(fubini_study_distance(r, -r) == doctest::Approx(kPi / 2).epsilon(1e-7));
  CHECK(fubini_study_distance(kNorth, kEast) == doctest::Approx(kPi / 4).epsilon(1e-14));

  Xoshiro256PlusPlus rng(15);
  for (int i = 0; i < 1000; ++i) {
    const UnitVector3 a = random_unit_vector(rng);
    const UnitVector3 b = random_unit_vector(rng);
    REQUIRE(fubini_study_distance(a, b) == doctest::Approx(fubini_study_distance(b, a)));
    REQUIRE(fubini_study_distance(a, b) >= 0.0);
  }
}

TEST_CASE("invalid epsilon is rejected") {
  CHECK_THROWS_AS(FuzzyProjector(kNorth, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(FuzzyProjector(kNorth, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(equilibrium_latitude(0.0), std::invalid_argument);
  CHECK_THROWS_AS(equilibrium_latitude(1.0), std::invalid_argument);
}
