#pragma once

#include <cmath>
#include <stdexcept>

namespace qfract {

// Norm tolerance for unit vectors throughout the library.
inline constexpr double kUnitTol = 1e-12;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Point on the unit sphere S^2. Serves as a pure spin state, a detector
// axis and a Bloch vector alike. The squared norm stays within kUnitTol
// of one; build from raw components via normalized().
class UnitVector3 {
 public:
  // Default direction is the north pole (0,0,1).
  constexpr UnitVector3() = default;

  static UnitVector3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n < 1e-15) throw std::invalid_argument("UnitVector3: cannot normalize near-zero vector");
    return UnitVector3(v.x / n, v.y / n, v.z / n);
  }
  static UnitVector3 normalized(double x, double y, double z) {
    return normalized(Vec3{x, y, z});
  }

  // Trusted constructor for components already known to be unit length
  // (closed-form tables, hot loops). No checks.
  static constexpr UnitVector3 unchecked(double x, double y, double z) {
    return UnitVector3(x, y, z);
  }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Vec3 vec() const { return {x_, y_, z_}; }

  friend bool operator==(const UnitVector3& a, const UnitVector3& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
  }

 private:
  constexpr UnitVector3(double x, double y, double z) : x_(x), y_(y), z_(z) {}
  double x_ = 0.0, y_ = 0.0, z_ = 1.0;
};

inline double dot(const UnitVector3& a, const UnitVector3& b) { return dot(a.vec(), b.vec()); }
inline double dot(const UnitVector3& a, const Vec3& b) { return dot(a.vec(), b); }
inline double dot(const Vec3& a, const UnitVector3& b) { return dot(a, b.vec()); }
inline UnitVector3 operator-(const UnitVector3& u) {
  return UnitVector3::unchecked(-u.x(), -u.y(), -u.z());
}

// Row-major 3x3 matrix; enough for rotations and small frame work.
struct Mat3 {
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  static Mat3 identity() { return {}; }

  // Rodrigues rotation about a unit axis.
  static Mat3 rotation(const UnitVector3& axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    const double kx = axis.x(), ky = axis.y(), kz = axis.z();
    Mat3 r;
    r.m[0][0] = c + t * kx * kx;
    r.m[0][1] = t * kx * ky - s * kz;
    r.m[0][2] = t * kx * kz + s * ky;
    r.m[1][0] = t * ky * kx + s * kz;
    r.m[1][1] = c + t * ky * ky;
    r.m[1][2] = t * ky * kz - s * kx;
    r.m[2][0] = t * kz * kx - s * ky;
    r.m[2][1] = t * kz * ky + s * kx;
    r.m[2][2] = c + t * kz * kz;
    return r;
  }

  Vec3 apply(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
  UnitVector3 apply(const UnitVector3& u) const { return UnitVector3::normalized(apply(u.vec())); }
};

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    }
  return r;
}

}  // namespace qfract
