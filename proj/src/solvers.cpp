#include "wahba/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Jacobi>
#include <Eigen/LU>
#include <cmath>

#include "wahba/errors.hpp"

namespace wahba {
namespace {

Mat3 adjugate(const Mat3& m) {
  Mat3 adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return adj;
}

// q = (1 + z^T D^T D z)^{-1/2} [D z; 1]
Quaterniond quat_from_resolvent(const Resolvent& res, const Vec3& z) {
  return from_rodrigues<double>(res.D * z);
}

double eigen_residual(const Mat4& K, const Quaterniond& q, double lambda) {
  return (K * q.coeffs() - lambda * q.coeffs()).norm();
}

SolveReport make_report(const DavenportSystem& sys, const Quaterniond& q, double lambda,
                        int iterations, Method method) {
  SolveReport rep;
  rep.q = canonical_sign(q);
  rep.lambda = lambda;
  rep.iterations = iterations;
  rep.residual = eigen_residual(sys.K, rep.q, lambda);
  rep.taste = taste(sys.lambda0, lambda);
  rep.method = method;
  return rep;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::QMethod: return "q_method";
    case Method::Quest: return "quest";
    case Method::FirstOrder: return "first_order";
    case Method::Recursive: return "recursive";
  }
  return "unknown";
}

Resolvent resolvent_direct(const DavenportSystem& sys, double lambda) {
  const Mat3 M = (lambda + sys.sigma) * Mat3::Identity() - sys.rho;
  const double det = M.determinant();
  const double scale = std::max(1.0, sys.lambda0 * sys.lambda0 * sys.lambda0);
  if (std::abs(det) <= 1e-12 * scale)
    throw NearSingular("(lambda + sigma) I - rho is singular (rotation near 180 degrees)");
  return Resolvent{adjugate(M) / det, lambda};
}

Resolvent neumann_inverse_update(const Resolvent& D_prev, double dlambda) {
  if (std::abs(dlambda) * D_prev.D.norm() >= 1.0)
    throw ConvergenceViolation("Neumann update outside contraction region");
  return Resolvent{D_prev.D - dlambda * D_prev.D * D_prev.D, D_prev.lambda_at + dlambda};
}

SolveReport q_method(const DavenportSystem& sys) {
  // Cyclic Jacobi on the symmetric 4x4 K. V accumulates the rotations.
  Mat4 A = sys.K;
  Mat4 V = Mat4::Identity();
  const double thresh = 1e-14 * sys.K.norm();
  const int max_sweeps = 50;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += A(p, q) * A(p, q);
    if (std::sqrt(2.0 * off) <= thresh) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(A(p, q)) <= thresh / 16.0) continue;
        Eigen::JacobiRotation<double> rot;
        rot.makeJacobi(A(p, p), A(p, q), A(q, q));
        A.applyOnTheLeft(p, q, rot.adjoint());
        A.applyOnTheRight(p, q, rot);
        V.applyOnTheRight(p, q, rot);
      }
    }
  }
  if (sweep == max_sweeps) throw NoConvergence("Jacobi sweep cap exceeded; malformed K");

  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (A(i, i) > A(best, best)) best = i;
  const Quaterniond q(Vec4(V.col(best).normalized()));
  return make_report(sys, q, A(best, best), sweep, Method::QMethod);
}

SolveReport quest_classic(const DavenportSystem& sys, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  // Newton on f(lambda) = lambda - sigma - z^T D(lambda) z with
  // f'(lambda) = 1 + z^T D^2 z, starting from lambda0. lambda_m is the unique
  // root above the largest pole of D (the top eigenvalue of rho - sigma I, by
  // interlacing), so iterates are kept inside that bracket; a Newton step that
  // would cross the pole is replaced by bisection.
  Eigen::SelfAdjointEigenSolver<Mat3> es(sys.rho, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().maxCoeff() - sys.sigma;
  double hi = sys.lambda0;  // f(lambda0) >= 0 since lambda_m <= lambda0

  double lambda = sys.lambda0;
  Resolvent res = resolvent_direct(sys, lambda);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const Vec3 Dz = res.D * sys.z;
    const double f = lambda - sys.sigma - sys.z.dot(Dz);
    const double fp = 1.0 + Dz.squaredNorm();
    (f < 0.0 ? lo : hi) = lambda;
    double next = lambda - f / fp;
    if (next <= lo || next > hi) next = 0.5 * (lo + hi);
    const double dlambda = next - lambda;
    lambda = next;
    res = resolvent_direct(sys, lambda);
    if (std::abs(dlambda) < tol) break;
  }
  if (iter == max_iter) throw NoConvergence("QUEST Newton iteration exceeded max_iter");
  return make_report(sys, quat_from_resolvent(res, sys.z), lambda, iter + 1, Method::Quest);
}

SolveReport first_order(const DavenportSystem& sys) {
  const Resolvent D0 = resolvent_direct(sys, sys.lambda0);
  const Quaterniond q0 = quat_from_resolvent(D0, sys.z);
  const double lambda1 = gain(q0, sys);  // Rayleigh refinement of lambda0
  const Resolvent D1 = resolvent_direct(sys, lambda1);
  return make_report(sys, quat_from_resolvent(D1, sys.z), lambda1, 0, Method::FirstOrder);
}

SolveReport recursive_solve(const DavenportSystem& sys, double tol, int max_iter) {
  if (tol <= 0.0) tol = 1e-13 * sys.lambda0;

  double lambda_prev = sys.lambda0;
  Resolvent res = resolvent_direct(sys, lambda_prev);
  Quaterniond q = quat_from_resolvent(res, sys.z);

  // (lambda0 - lambda1) * ||D|| estimates the ratio of the initial eigenvalue
  // error to the eigengap; when it is not small the fixed-point iteration
  // cannot contract (the near-180-degree regime).
  const double lambda1 = gain(q, sys);
  if ((sys.lambda0 - lambda1) * res.D.norm() >= 0.1)
    throw NearSingular("initial perturbation too large for the resolvent conditioning");

  // The Neumann update leaves a relative error of order (dlambda ||D||)^2 in
  // D that later iterations inherit; keep it below the convergence tolerance
  // so the large first increment refreshes directly and the small later ones
  // use the cheap update.
  const double neumann_margin = std::min(0.5, std::sqrt(tol / sys.lambda0));

  int nonmonotone = 0;
  for (int a = 1; a <= max_iter; ++a) {
    const double lambda = a == 1 ? lambda1 : gain(q, sys);
    const double dlambda = lambda - lambda_prev;

    // The eigenvalue sequence should be nondecreasing; a persistent drop
    // means the perturbation assumption is violated (bad SNR).
    if (dlambda < -10.0 * tol) {
      if (++nonmonotone >= 3)
        throw DivergenceDetected("eigenvalue sequence non-monotone; perturbation assumption violated");
    } else {
      nonmonotone = 0;
    }

    if (std::abs(dlambda) * res.D.norm() >= neumann_margin) {
      res = resolvent_direct(sys, lambda);
    } else {
      res = neumann_inverse_update(res, dlambda);
    }
    q = quat_from_resolvent(res, sys.z);

    if (std::abs(dlambda) < tol) return make_report(sys, q, lambda, a, Method::Recursive);
    lambda_prev = lambda;
  }
  throw NoConvergence("recursive solve exceeded max_iter");
}

}  // namespace wahba
