#include "wahba/davenport.hpp"

#include <cmath>

#include "wahba/errors.hpp"

namespace wahba {

DavenportSystem build_system(const MeasurementSet& meas) {
  if (meas.size() < 2) throw InvalidMeasurement("need at least 2 measurements");
  for (const auto& m : meas.entries) {
    if (!m.b.allFinite() || !m.r.allFinite() || !std::isfinite(m.w))
      throw InvalidMeasurement("non-finite entry");
    if (std::abs(m.b.norm() - 1.0) > kUnitTol) throw InvalidMeasurement("body vector not unit");
    if (std::abs(m.r.norm() - 1.0) > kUnitTol)
      throw InvalidMeasurement("reference vector not unit");
    if (!(m.w > 0.0)) throw InvalidMeasurement("weight must be positive");
  }

  DavenportSystem sys;
  sys.B.setZero();
  sys.z.setZero();
  sys.lambda0 = 0.0;
  for (const auto& m : meas.entries) {
    sys.B += m.w * m.b * m.r.transpose();
    sys.z += m.w * m.b.cross(m.r);
    sys.lambda0 += m.w;
  }
  sys.rho = sys.B + sys.B.transpose();
  sys.sigma = sys.B.trace();

  sys.K.topLeftCorner<3, 3>() = sys.rho - sys.sigma * Mat3::Identity();
  sys.K.topRightCorner<3, 1>() = sys.z;
  sys.K.bottomLeftCorner<1, 3>() = sys.z.transpose();
  sys.K(3, 3) = sys.sigma;
  return sys;
}

double gain(const Quaterniond& q, const DavenportSystem& sys) {
  require_unit(q);
  return q.coeffs().dot(sys.K * q.coeffs());
}

double wahba_loss(const Quaterniond& q, const DavenportSystem& sys) {
  return sys.lambda0 - gain(q, sys);
}

}  // namespace wahba
