#pragma once

#include "entromin/dual_solver.hpp"
#include "entromin/moment_problem.hpp"

namespace entromin {

struct OracleOptions {
  double step = 1e-2;
  long max_iter = 200000;
  double tol = 1e-9;
  // Iterates are clipped to at least this far inside finite domain endpoints.
  double interior_margin = 1e-12;
  // Iterations between refreshes of the diagonal curvature metric.
  int metric_refresh = 200;
};

struct CompareReport {
  double sup_diff = 0.0;
  double weighted_l1_diff = 0.0;
  double objective_gap = 0.0;
  double sup_tol = 1e-4;
  double objective_tol = 1e-6;
  bool agree = false;
};

// Weighted-least-squares projection of x onto the affine set of functions
// matching the problem's moment targets.
GridFunction affine_project(const GridFunction& x, const MomentProblem& p);

// Independent brute-force minimizer: projected gradient descent in a fixed
// diagonal curvature metric over the affine feasible set, iterates kept
// strictly interior by clipping. Shares no solution machinery with the
// multiplier solver.
GridFunction primal_solve(const MomentProblem& p, const OracleOptions& opts = {});

// Distance metrics between the solver's answer and the oracle's.
CompareReport compare(const SolveReport& report, const GridFunction& oracle_x,
                      const MomentProblem& p, double sup_tol = 1e-4,
                      double objective_tol = 1e-6);

}  // namespace entromin
