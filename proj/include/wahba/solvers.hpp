#ifndef WAHBA_SOLVERS_HPP
#define WAHBA_SOLVERS_HPP

#include <string>

#include "wahba/davenport.hpp"

namespace wahba {

enum class Method { QMethod, Quest, FirstOrder, Recursive };

std::string method_name(Method m);

struct SolveReport {
  Quaterniond q;     // unit, canonical sign (scalar part >= 0)
  double lambda;     // eigenvalue estimate
  int iterations;
  double residual;   // |K q - lambda q|_2
  double taste;      // lambda0 - lambda
  Method method;
};

// D(lambda) = [(lambda + sigma) I - rho]^{-1} together with the lambda at
// which it was formed or last updated.
struct Resolvent {
  Mat3 D;
  double lambda_at;
};

// Exact 3x3 inverse by the adjugate formula. Throws NearSingular when the
// determinant of (lambda + sigma) I - rho is below 1e-12 * max(1, lambda0^3).
Resolvent resolvent_direct(const DavenportSystem& sys, double lambda);

// D(lambda + dlambda) ~= D - dlambda D^2, good to dlambda^2. Requires
// |dlambda| * ||D||_F < 1 (Neumann convergence), else ConvergenceViolation.
Resolvent neumann_inverse_update(const Resolvent& D_prev, double dlambda);

// Reference oracle: full spectral factorization of K by cyclic Jacobi
// rotations; returns the eigenpair of the algebraically largest eigenvalue.
SolveReport q_method(const DavenportSystem& sys);

// Classic QUEST: Newton iteration on the characteristic equation starting at
// lambda0, then Rodrigues recovery p = [(sigma + lambda) I - rho]^{-1} z.
SolveReport quest_classic(const DavenportSystem& sys, double tol = 1e-13, int max_iter = 50);

// Non-iterative first-order estimate: p0 = D(lambda0) z, lambda1 = q0^T K q0,
// q1 from D(lambda1) z.
SolveReport first_order(const DavenportSystem& sys);

// Recursive eigenvalue refinement: Rayleigh-quotient updates of lambda with
// the resolvent advanced by the quadratic Neumann update; only the initial
// D(lambda0) is computed by a direct inverse. tol <= 0 selects the default
// 1e-13 * lambda0.
SolveReport recursive_solve(const DavenportSystem& sys, double tol = -1.0, int max_iter = 8);

}  // namespace wahba

#endif  // WAHBA_SOLVERS_HPP
