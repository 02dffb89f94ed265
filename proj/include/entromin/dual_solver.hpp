#pragma once

#include <string>

#include "entromin/moment_problem.hpp"

namespace entromin {

enum class InitStrategy { Zeros, LeastSquaresLogDensity };

struct SolverOptions {
  double tol_moments = 1e-10;
  int max_iter = 100;
  InitStrategy init = InitStrategy::Zeros;
  int max_halvings = 60;
  double armijo_c1 = 1e-4;
};

struct SolveReport {
  GridFunction x_values;
  Multipliers alpha;
  double entropy = 0.0;
  Eigen::VectorXd moment_residual;
  double lmm_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
};

// Candidate density (phi*)'(sum_k alpha_k psi_k(t_i)) node by node.
GridFunction link_density(const Multipliers& alpha, const MomentProblem& p);

// G(alpha) = moments of the link density.
Eigen::VectorXd moment_map(const Multipliers& alpha, const MomentProblem& p);

// dG/dalpha: the basis Gram matrix in the link-weighted inner product,
// J_kl = sum_i w_i (phi*)''(s_i) psi_k(t_i) psi_l(t_i).
Eigen::MatrixXd jacobian(const Multipliers& alpha, const MomentProblem& p);

Multipliers init_multipliers(const MomentProblem& p, InitStrategy strategy);

// Damped Newton iteration on G(alpha) = b. Non-convergence is reported via
// the converged flag and stop_reason, carrying the best iterate found.
SolveReport solve(const MomentProblem& p, const SolverOptions& opts = {});

}  // namespace entromin
