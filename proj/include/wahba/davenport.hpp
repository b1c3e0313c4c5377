#ifndef WAHBA_DAVENPORT_HPP
#define WAHBA_DAVENPORT_HPP

#include <Eigen/Core>
#include <vector>

#include "wahba/quat.hpp"

namespace wahba {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

struct Measurement {
  Vec3 b;   // body-frame unit vector
  Vec3 r;   // reference-frame unit vector
  double w; // positive weight
};

struct MeasurementSet {
  std::vector<Measurement> entries;
  std::size_t size() const { return entries.size(); }
};

// Precomputed Davenport eigenproblem data. K is 4x4 symmetric traceless with
// block layout [rho - sigma I, z; z^T, sigma].
struct DavenportSystem {
  Mat3 B;
  Mat3 rho;      // B + B^T
  Vec3 z;        // sum of w_n b_n x r_n
  double sigma;  // tr B
  double lambda0;  // sum of weights
  Mat4 K;
};

// Validates the set (N >= 2, unit vectors, positive weights) and assembles
// B, rho, z, sigma, lambda0 and K. Throws InvalidMeasurement on bad input.
DavenportSystem build_system(const MeasurementSet& meas);

// J(q) = lambda0 - q^T K q, the loss at attitude q.
double wahba_loss(const Quaterniond& q, const DavenportSystem& sys);

// G(q) = q^T K q; bounded above by the largest eigenvalue of K.
double gain(const Quaterniond& q, const DavenportSystem& sys);

// Goodness-of-fit statistic lambda0 - lambda_m.
inline double taste(double lambda0, double lambda_m) { return lambda0 - lambda_m; }

}  // namespace wahba

#endif  // WAHBA_DAVENPORT_HPP
