#pragma once

#include <complex>
#include <stdexcept>

#include "qfract/vec3.hpp"

namespace qfract {

// Independent complex 2x2 route through the same physics as the closed-form
// Bloch-vector code: Pauli algebra, projectors, trace probabilities and the
// Minkowski/boost correspondence. Deliberately self-contained (no linear
// algebra dependency) so it can serve as an auditable ground-truth oracle.

class ZeroProduct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using cplx = std::complex<double>;

// Row-major complex 2x2 matrix [[m00, m01], [m10, m11]].
struct Complex2x2 {
  cplx m00{}, m01{}, m10{}, m11{};

  static Complex2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex2x2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  cplx trace() const { return m00 + m11; }
  cplx det() const { return m00 * m11 - m01 * m10; }
  bool is_hermitian(double tol = 1e-12) const;
};

Complex2x2 operator+(const Complex2x2& a, const Complex2x2& b);
Complex2x2 operator-(const Complex2x2& a, const Complex2x2& b);
Complex2x2 operator*(const Complex2x2& a, const Complex2x2& b);
Complex2x2 operator*(const cplx& s, const Complex2x2& a);
Complex2x2 operator*(double s, const Complex2x2& a);

// Largest entry-wise absolute difference.
double max_abs_diff(const Complex2x2& a, const Complex2x2& b);

// sigma_0 = I, sigma_1..3 the Pauli matrices. Throws std::out_of_range.
Complex2x2 pauli(int mu);

// sigma(n) = n1 sigma_1 + n2 sigma_2 + n3 sigma_3; satisfies sigma(n)^2 = I.
Complex2x2 spin_matrix(const UnitVector3& n);

// P(n) = (I + sigma(n))/2: orthogonal projection onto the +1 eigenstate.
Complex2x2 sharp_projector(const UnitVector3& n);

// P(n, eps) = (I + eps sigma(n))/2 with eigenvalues (1 +- eps)/2.
Complex2x2 fuzzy_projector(const UnitVector3& n, double epsilon);

struct OracleJump {
  double lambda = 0.0;
  UnitVector3 new_state;
};

// Computes P(n,eps) P(r) P(n,eps) and factors it as lambda * P(r').
// lambda is the trace of the product; r' is extracted from the normalized
// product via m_i = Tr(M sigma_i). Throws ZeroProduct when lambda <= 1e-14.
OracleJump oracle_jump(const UnitVector3& n, double epsilon, const UnitVector3& r);

struct CompositionCheck {
  double scale = 0.0;        // (1 + eps^2)/2
  double epsilon_out = 0.0;  // 2 eps / (1 + eps^2)
  double max_deviation = 0.0;
};

// Verifies P(n,eps)^2 = scale * P(n, epsilon_out) entry-wise within 1e-12
// (throws std::logic_error otherwise) and returns the parameters.
CompositionCheck composition_identity_check(const UnitVector3& n, double epsilon);

// Minkowski four-vector p^mu = (p0, p1, p2, p3).
struct FourVector {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;

  double minkowski_norm2() const { return p0 * p0 - p1 * p1 - p2 * p2 - p3 * p3; }
};

// p -> p^mu sigma_mu. det(slash(p)) equals the Minkowski square of p;
// unit Bloch vectors r give slash((1, r)) = 2 P(r), a null direction.
Complex2x2 slash(const FourVector& p);

// Inverse of slash via p^mu = Tr(M sigma_mu)/2. Requires Hermitian input
// (throws NonHermitian beyond 1e-12).
FourVector unslash(const Complex2x2& m);

// Lorentz boost parameters equivalent to a fuzzy projection: the jump acts
// on the projective light cone as a boost along the detector axis with
// velocity beta = 2 eps / (1 + eps^2), i.e. rapidity alpha = 2 artanh(eps).
// alpha is the stored primary quantity; beta loses precision as eps -> 1.
struct BoostParams {
  UnitVector3 direction;
  double beta = 0.0;
  double alpha = 0.0;

  static BoostParams from_epsilon(const UnitVector3& n, double epsilon);
};

// Applies the 4x4 boost to the null four-vector (1, r) and re-projects the
// spatial part to the unit sphere. Agrees with the closed-form jump.
UnitVector3 boost_null_direction(const BoostParams& bp, const UnitVector3& r);

// Matrix exponential by scaling-and-squaring Taylor series. Kept independent
// of the closed-form cosh/sinh identity it is used to check.
Complex2x2 matrix_exp(const Complex2x2& m);

// Max deviation between the unit-trace normalizations of P(n,eps) and
// exp(alpha sigma(n)/2), combined with the worst mismatch between the
// null-cone boost action and the closed-form jump over a probe set of
// states. Both vanish up to rounding when the boost correspondence holds.
double boost_equivalence(const UnitVector3& n, double epsilon);

}  // namespace qfract
