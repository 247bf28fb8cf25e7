#include "qfract/matrix_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qfract/spin_geometry.hpp"

namespace qfract {

bool Complex2x2::is_hermitian(double tol) const {
  return max_abs_diff(*this, adjoint()) <= tol;
}

Complex2x2 operator+(const Complex2x2& a, const Complex2x2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

Complex2x2 operator-(const Complex2x2& a, const Complex2x2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

Complex2x2 operator*(const Complex2x2& a, const Complex2x2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Complex2x2 operator*(const cplx& s, const Complex2x2& a) {
  return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

Complex2x2 operator*(double s, const Complex2x2& a) { return cplx(s, 0.0) * a; }

double max_abs_diff(const Complex2x2& a, const Complex2x2& b) {
  return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                   std::abs(a.m11 - b.m11)});
}

Complex2x2 pauli(int mu) {
  const cplx i(0.0, 1.0);
  switch (mu) {
    case 0: return {1.0, 0.0, 0.0, 1.0};
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -i, i, 0.0};
    case 3: return {1.0, 0.0, 0.0, -1.0};
    default: throw std::out_of_range("pauli: index must be 0..3");
  }
}

Complex2x2 spin_matrix(const UnitVector3& n) {
  const cplx i(0.0, 1.0);
  return {cplx(n.z(), 0.0), cplx(n.x(), 0.0) - i * n.y(), cplx(n.x(), 0.0) + i * n.y(),
          cplx(-n.z(), 0.0)};
}

Complex2x2 sharp_projector(const UnitVector3& n) {
  return 0.5 * (Complex2x2::identity() + spin_matrix(n));
}

Complex2x2 fuzzy_projector(const UnitVector3& n, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("fuzzy_projector: epsilon must lie in [0,1]");
  return 0.5 * (Complex2x2::identity() + epsilon * spin_matrix(n));
}

OracleJump oracle_jump(const UnitVector3& n, double epsilon, const UnitVector3& r) {
  const Complex2x2 pn = fuzzy_projector(n, epsilon);
  const Complex2x2 product = pn * sharp_projector(r) * pn;
  const double lambda = product.trace().real();
  if (lambda <= 1e-14)
    throw ZeroProduct("oracle_jump: sharp projection annihilated the state");
  // product/lambda = P(r'): Bloch components are Tr(M sigma_i).
  double m[3];
  double max_imag = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const cplx t = (product * pauli(i)).trace();
    m[i - 1] = t.real() / lambda;
    max_imag = std::max(max_imag, std::abs(t.imag()));
  }
  if (max_imag > 1e-12)
    throw std::logic_error("oracle_jump: non-real Bloch component");
  return {lambda, UnitVector3::normalized(m[0], m[1], m[2])};
}

CompositionCheck composition_identity_check(const UnitVector3& n, double epsilon) {
  CompositionCheck out;
  out.scale = 0.5 * (1.0 + epsilon * epsilon);
  out.epsilon_out = 2.0 * epsilon / (1.0 + epsilon * epsilon);
  const Complex2x2 lhs = fuzzy_projector(n, epsilon) * fuzzy_projector(n, epsilon);
  const Complex2x2 rhs = out.scale * fuzzy_projector(n, out.epsilon_out);
  out.max_deviation = max_abs_diff(lhs, rhs);
  if (out.max_deviation > 1e-12)
    throw std::logic_error("composition_identity_check: identity violated");
  return out;
}

Complex2x2 slash(const FourVector& p) {
  const cplx i(0.0, 1.0);
  return {cplx(p.p0 + p.p3, 0.0), cplx(p.p1, 0.0) - i * p.p2, cplx(p.p1, 0.0) + i * p.p2,
          cplx(p.p0 - p.p3, 0.0)};
}

FourVector unslash(const Complex2x2& m) {
  if (!m.is_hermitian(1e-12)) throw NonHermitian("unslash: input is not Hermitian");
  FourVector p;
  p.p0 = 0.5 * (m * pauli(0)).trace().real();
  p.p1 = 0.5 * (m * pauli(1)).trace().real();
  p.p2 = 0.5 * (m * pauli(2)).trace().real();
  p.p3 = 0.5 * (m * pauli(3)).trace().real();
  return p;
}

BoostParams BoostParams::from_epsilon(const UnitVector3& n, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("BoostParams: epsilon must lie in [0,1)");
  BoostParams bp;
  bp.direction = n;
  bp.alpha = 2.0 * std::atanh(epsilon);
  bp.beta = std::tanh(bp.alpha);  // equals 2 eps / (1 + eps^2)
  return bp;
}

UnitVector3 boost_null_direction(const BoostParams& bp, const UnitVector3& r) {
  const double ch = std::cosh(bp.alpha), sh = std::sinh(bp.alpha);
  const double c = dot(bp.direction, r);
  const double y0 = ch + c * sh;
  const Vec3 yv = r.vec() + ((ch - 1.0) * c + sh) * bp.direction.vec();
  return UnitVector3::normalized((1.0 / y0) * yv);
}

Complex2x2 matrix_exp(const Complex2x2& m) {
  const double scale = std::max({std::abs(m.m00), std::abs(m.m01), std::abs(m.m10),
                                 std::abs(m.m11)});
  int squarings = 0;
  while (scale / double(1ULL << squarings) > 0.25) ++squarings;
  const Complex2x2 a = (1.0 / double(1ULL << squarings)) * m;

  Complex2x2 sum = Complex2x2::identity();
  Complex2x2 term = Complex2x2::identity();
  for (int k = 1; k <= 20; ++k) {
    term = (1.0 / k) * (term * a);
    sum = sum + term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double boost_equivalence(const UnitVector3& n, double epsilon) {
  const BoostParams bp = BoostParams::from_epsilon(n, epsilon);

  // P(n,eps) and exp(alpha sigma(n)/2) agree after unit-trace normalization.
  const Complex2x2 p = fuzzy_projector(n, epsilon);
  const Complex2x2 e = matrix_exp((0.5 * bp.alpha) * spin_matrix(n));
  const Complex2x2 p_unit = (1.0 / p.trace()) * p;
  const Complex2x2 e_unit = (1.0 / e.trace()) * e;
  double dev = max_abs_diff(p_unit, e_unit);

  // Null-cone action vs the closed-form jump over a fixed probe set.
  const std::array<UnitVector3, 5> probes = {
      UnitVector3::unchecked(0, 0, 1), UnitVector3::unchecked(1, 0, 0),
      UnitVector3::unchecked(0, 1, 0), UnitVector3::normalized(1, 1, 1),
      UnitVector3::normalized(-0.3, 0.7, -0.2)};
  for (const UnitVector3& r : probes) {
    const UnitVector3 via_boost = boost_null_direction(bp, r);
    const UnitVector3 via_jump = jump(FuzzyProjector(n, epsilon), r).new_state;
    dev = std::max({dev, std::abs(via_boost.x() - via_jump.x()),
                    std::abs(via_boost.y() - via_jump.y()),
                    std::abs(via_boost.z() - via_jump.z())});
  }
  return dev;
}

}  // namespace qfract
