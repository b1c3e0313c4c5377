#ifndef WAHBA_QUAT_HPP
#define WAHBA_QUAT_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

#include "wahba/errors.hpp"

// Quaternion algebra with the aerospace scalar-last layout: a quaternion is
// stored and serialized as [v1, v2, v3, s]. Operations needing unit inputs
// validate and throw; they never renormalize silently.

namespace wahba {

inline constexpr double kUnitTol = 1e-9;
inline constexpr double kGimbalEps = 1e-8;  // |Sq| threshold for Rodrigues conversion

template <typename Scalar>
struct Quaternion {
  using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
  using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

  Vec4 c{Vec4::Zero()};  // [v1, v2, v3, s]

  Quaternion() { c(3) = Scalar(1); }
  Quaternion(Scalar v1, Scalar v2, Scalar v3, Scalar s) : c(v1, v2, v3, s) {}
  explicit Quaternion(const Vec4& coeffs) : c(coeffs) {}
  Quaternion(const Vec3& vec, Scalar s) { c << vec, s; }

  Scalar scalar() const { return c(3); }
  Vec3 vec() const { return c.template head<3>(); }
  const Vec4& coeffs() const { return c; }

  static Quaternion identity() { return Quaternion(); }

  Quaternion operator-() const { return Quaternion(Vec4(-c)); }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return Quaternion(Vec4(a.c + b.c));
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return Quaternion(Vec4(a.c - b.c));
  }
  friend Quaternion operator*(Scalar k, const Quaternion& q) {
    return Quaternion(Vec4(k * q.c));
  }
};

// Rotation generator: a pure quaternion, scalar part identically zero.
// Its modulus is the rotation half-angle in radians.
template <typename Scalar>
using PureQuaternion = Eigen::Matrix<Scalar, 3, 1>;

using Quaterniond = Quaternion<double>;
using PureQuaterniond = PureQuaternion<double>;

template <typename Scalar>
Scalar norm(const Quaternion<Scalar>& q) {
  return q.c.norm();
}

template <typename Scalar>
Quaternion<Scalar> conjugate(const Quaternion<Scalar>& q) {
  return Quaternion<Scalar>(-q.c(0), -q.c(1), -q.c(2), q.c(3));
}

template <typename Scalar>
Quaternion<Scalar> normalized(const Quaternion<Scalar>& q) {
  const Scalar n = norm(q);
  if (!(n > Scalar(0))) throw NotUnit("cannot normalize zero quaternion");
  return Quaternion<Scalar>(typename Quaternion<Scalar>::Vec4(q.c / n));
}

template <typename Scalar>
void require_unit(const Quaternion<Scalar>& q, double tol = kUnitTol) {
  if (std::abs(norm(q) - Scalar(1)) > tol) throw NotUnit("quaternion norm deviates from 1");
}

// Hamilton product pq: S(pq) = SpSq - Vp.Vq, V(pq) = SpVq + SqVp + VpxVq.
template <typename Scalar>
Quaternion<Scalar> quat_mul(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  const auto vp = p.vec();
  const auto vq = q.vec();
  const Scalar sp = p.scalar();
  const Scalar sq = q.scalar();
  return Quaternion<Scalar>(typename Quaternion<Scalar>::Vec3(sp * vq + sq * vp + vp.cross(vq)),
                            sp * sq - vp.dot(vq));
}

// exp(p) = cos|p| + (sin|p|/|p|) p for pure p; unit by construction.
template <typename Scalar>
Quaternion<Scalar> quat_exp(const PureQuaternion<Scalar>& p) {
  const Scalar a = p.norm();
  Scalar sinc, cosa;
  if (a < Scalar(1e-4)) {
    const Scalar a2 = a * a;
    sinc = Scalar(1) - a2 / Scalar(6);
    cosa = Scalar(1) - a2 / Scalar(2);
  } else {
    sinc = std::sin(a) / a;
    cosa = std::cos(a);
  }
  return Quaternion<Scalar>(typename Quaternion<Scalar>::Vec3(sinc * p), cosa);
}

// Generator with |p| <= pi; the +-Q ambiguity is resolved toward the
// representative with nonnegative scalar part.
template <typename Scalar>
PureQuaternion<Scalar> quat_log(const Quaternion<Scalar>& Q) {
  require_unit(Q);
  typename Quaternion<Scalar>::Vec4 c = Q.c;
  if (c(3) < Scalar(0)) c = -c;
  const Scalar vn = c.template head<3>().norm();
  const Scalar s = std::min(c(3), Scalar(1));
  if (vn < Scalar(1e-14)) return PureQuaternion<Scalar>::Zero();
  const Scalar angle = std::atan2(vn, s);  // in [0, pi/2] after sign fix
  return PureQuaternion<Scalar>((angle / vn) * c.template head<3>());
}

// Rodrigues parameters p -> unit quaternion (1 + p^T p)^{-1/2} [p; 1].
template <typename Scalar>
Quaternion<Scalar> from_rodrigues(const Eigen::Matrix<Scalar, 3, 1>& p) {
  const Scalar k = Scalar(1) / std::sqrt(Scalar(1) + p.squaredNorm());
  return Quaternion<Scalar>(typename Quaternion<Scalar>::Vec3(k * p), k);
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> to_rodrigues(const Quaternion<Scalar>& q) {
  if (std::abs(q.scalar()) <= Scalar(kGimbalEps))
    throw NearSingular("Rodrigues parameters undefined near 180 degree rotation");
  return q.vec() / q.scalar();
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> cross_matrix(const Eigen::Matrix<Scalar, 3, 1>& v) {
  Eigen::Matrix<Scalar, 3, 3> m;
  m << Scalar(0), -v(2), v(1), v(2), Scalar(0), -v(0), -v(1), v(0), Scalar(0);
  return m;
}

// A(q) = (Sq^2 - Vq.Vq) I + 2 Vq Vq^T - 2 Sq [Vqx]; proper orthogonal,
// A(q) = A(-q), and A(pq) = A(q) A(p).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> attitude_matrix(const Quaternion<Scalar>& q) {
  require_unit(q);
  const auto v = q.vec();
  const Scalar s = q.scalar();
  return (s * s - v.dot(v)) * Eigen::Matrix<Scalar, 3, 3>::Identity() +
         Scalar(2) * v * v.transpose() - Scalar(2) * s * cross_matrix<Scalar>(v);
}

// Canonical sign: nonnegative scalar part; if the scalar part is zero the
// first nonzero vector component is made positive.
template <typename Scalar>
Quaternion<Scalar> canonical_sign(const Quaternion<Scalar>& q) {
  if (q.c(3) > Scalar(0)) return q;
  if (q.c(3) < Scalar(0)) return -q;
  for (int i = 0; i < 3; ++i) {
    if (q.c(i) > Scalar(0)) return q;
    if (q.c(i) < Scalar(0)) return -q;
  }
  return q;
}

}  // namespace wahba

#endif  // WAHBA_QUAT_HPP
