#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entromin/dual_solver.hpp"
#include "entromin/moment_problem.hpp"

namespace entromin {

enum class CertificateVerdict {
  CertifiedOptimal,
  FeasibleNotCertified,
  Infeasible,
};

struct CertifyOptions {
  double feasibility_tol = 1e-8;
  double lmm_tol = 1e-8;
  double dd_tol = 1e-8;
  int directions = 64;
  std::uint64_t seed = 0;
  // Nodes within this distance of a finite domain endpoint reject directions
  // pointing outward; 0 restricts the rejection to exact boundary values.
  double boundary_atol = 0.0;
};

struct CertificateStatus {
  bool feasible = false;
  double feasibility_residual = 0.0;
  std::optional<double> lmm_residual;
  int directions_checked = 0;
  std::optional<double> min_directional_derivative;  // may be -inf
  CertificateVerdict verdict = CertificateVerdict::FeasibleNotCertified;
};

struct InteriorityReport {
  bool all_interior = false;
  std::vector<Eigen::Index> offending_nodes;
};

// One-sided derivative of the entropy functional at xbar toward x:
// integral of phi'(xbar_i) * (x_i - xbar_i). May be -inf; never +inf for
// x in the functional's domain when entropy_value(xbar) is finite.
ExtReal directional_derivative(const GridFunction& xbar, const GridFunction& x,
                               const EntropyFunction& f,
                               const DiscretizedMeasure& m);

// Same pairing against a raw direction u: integral of phi'(xbar_i) * u_i.
ExtReal directional_derivative_along(const GridFunction& xbar,
                                     const GridFunction& u,
                                     const EntropyFunction& f,
                                     const DiscretizedMeasure& m);

// sup over nodes of |phi'(xbar_i) - sum_k alpha_k psi_k(t_i)|.
double lmm_residual(const GridFunction& xbar, const Multipliers& alpha,
                    const MomentProblem& p);

// Multipliers minimizing the weighted L2 norm of the multiplier-identity
// defect phi'(xbar) - sum alpha_k psi_k.
Multipliers best_multipliers(const GridFunction& xbar, const MomentProblem& p);

// Directions spanning (and randomly combined within) the null space of the
// moment operator: each u satisfies max_k |Psi_k(u)| <= 1e-10. Deterministic
// for a fixed seed.
std::vector<GridFunction> sample_feasible_directions(const MomentProblem& p,
                                                     int count,
                                                     std::uint64_t seed);

InteriorityReport check_interiority(const GridFunction& xbar,
                                    const EntropyFunction& f);

// Optimality certificate: feasibility residual, multiplier-identity route,
// and the sampled-direction route over +-u for directions that keep
// xbar + eps*u inside dom phi.
CertificateStatus certify(const GridFunction& xbar, const MomentProblem& p,
                          const std::optional<Multipliers>& alpha = {},
                          const CertifyOptions& opts = {});

}  // namespace entromin
