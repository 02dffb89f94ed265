#include "entromin/dual_solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <limits>
#include <string>

#include "entromin/errors.hpp"

namespace entromin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Weighted least-squares fit of the basis to node values y.
Multipliers fit_basis_to(const MomentProblem& p, const Eigen::VectorXd& y) {
  const Eigen::VectorXd sw = p.measure().weights().cwiseSqrt();
  const Eigen::MatrixXd a = sw.asDiagonal() * p.basis_matrix();
  return a.colPivHouseholderQr().solve(sw.cwiseProduct(y));
}

bool interior_everywhere(const MomentProblem& p, const Multipliers& alpha) {
  const Eigen::VectorXd s = p.basis_matrix() * alpha;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (!p.entropy().in_link_domain(s[i])) return false;
  return true;
}

double sup_multiplier_defect(const MomentProblem& p, const GridFunction& x,
                             const Eigen::VectorXd& s) {
  double sup = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = std::abs(p.entropy().derivative(x[i]).value() - s[i]);
    sup = std::max(sup, d);
  }
  return sup;
}

}  // namespace

GridFunction link_density(const Multipliers& alpha, const MomentProblem& p) {
  if (alpha.size() != p.num_constraints())
    throw LengthMismatch("link_density: multiplier count mismatch");
  const Eigen::VectorXd s = p.basis_matrix() * alpha;
  GridFunction x(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!p.entropy().in_link_domain(s[i]))
      throw LinkDomainError("link domain violated at node " +
                                std::to_string(i) +
                                " (s = " + std::to_string(s[i]) + ")",
                            static_cast<std::size_t>(i));
    x[i] = p.entropy().link(s[i]);
  }
  return x;
}

Eigen::VectorXd moment_map(const Multipliers& alpha, const MomentProblem& p) {
  return moments(link_density(alpha, p), p);
}

Eigen::MatrixXd jacobian(const Multipliers& alpha, const MomentProblem& p) {
  if (alpha.size() != p.num_constraints())
    throw LengthMismatch("jacobian: multiplier count mismatch");
  const Eigen::MatrixXd& bm = p.basis_matrix();
  const Eigen::VectorXd s = bm * alpha;
  Eigen::VectorXd d(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!p.entropy().in_link_domain(s[i]))
      throw LinkDomainError("link domain violated at node " +
                                std::to_string(i),
                            static_cast<std::size_t>(i));
    d[i] = p.measure().weights()[i] * p.entropy().link_derivative(s[i]);
  }
  return bm.transpose() * d.asDiagonal() * bm;
}

Multipliers init_multipliers(const MomentProblem& p, InitStrategy strategy) {
  const Eigen::Index m = p.num_constraints();
  const EntropyFunction& f = p.entropy();

  if (strategy == InitStrategy::Zeros) {
    if (f.in_link_domain(0.0)) return Multipliers::Zero(m);
    // Shifted start for link domains excluding zero: fit the constant
    // phi'(1), which is interior for every supported family.
    const double s0 = f.derivative(1.0).value();
    const Multipliers alpha =
        fit_basis_to(p, Eigen::VectorXd::Constant(p.num_nodes(), s0));
    if (interior_everywhere(p, alpha)) return alpha;
    throw InitFailure("zeros initialization: no interior shifted start");
  }

  Eigen::VectorXd y(p.num_nodes());
  bool have_y = false;
  if (p.is_gaussian_pg3()) {
    const Eigen::Vector3d b = p.targets();
    if (classify_gaussian_feasibility(b).cls ==
        FeasibilityClass::FeasibleInterior) {
      // Log density of the moment-matched closed form, evaluated
      // analytically so far tails cannot underflow.
      const GaussianSolution sol = gaussian_solution(b);
      const auto& t = p.measure().nodes();
      for (Eigen::Index i = 0; i < t.size(); ++i) {
        const double dt = t[i] - sol.beta;
        y[i] = 1.0 + sol.gamma - 0.5 * sol.alpha * dt * dt;
      }
      have_y = true;
    }
  }
  if (!have_y) {
    // Constant heuristic density: total mass spread uniformly when a
    // constant basis function pins it, else a family-specific interior point.
    double u0 = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::VectorXd col = p.basis_matrix().col(k);
      if ((col.array() == col[0]).all() && col[0] != 0.0) {
        u0 = p.targets()[k] / (col[0] * p.measure().total_mass());
        break;
      }
    }
    if (!std::isfinite(u0) || !f.in_interior(u0)) {
      u0 = f.family() == EntropyFamily::FermiDirac ? 0.5
           : f.family() == EntropyFamily::Quadratic ? 0.0
                                                    : 1.0;
    }
    y.setConstant(f.derivative(u0).value());
  }

  const Multipliers alpha = fit_basis_to(p, y);
  if (interior_everywhere(p, alpha)) return alpha;
  if (f.in_link_domain(0.0)) return Multipliers::Zero(m);
  throw InitFailure("least-squares initialization left the link domain");
}

SolveReport solve(const MomentProblem& p, const SolverOptions& opts) {
  if (!(opts.tol_moments > 0.0) || opts.max_iter < 1)
    throw DomainError("solver options: need tol_moments > 0, max_iter >= 1");

  const EntropyFunction& f = p.entropy();
  const Eigen::VectorXd& b = p.targets();
  const Eigen::MatrixXd& bm = p.basis_matrix();
  const Eigen::VectorXd& w = p.measure().weights();
  const Eigen::Index n = p.num_nodes();
  const Eigen::Index m = p.num_constraints();

  if (p.is_gaussian_pg3()) {
    const FeasibilityVerdict v = classify_gaussian_feasibility(b);
    if (v.cls == FeasibilityClass::Infeasible ||
        v.cls == FeasibilityClass::InfeasibleBoundary)
      throw InfeasibleTargets("targets outside the feasibility region: " +
                              v.note);
  }

  // All-zero targets with a nonnegative-density family: the zero density is
  // the unique feasible point, and it has no interior multiplier
  // representation, so it is returned without iterating.
  if (b.isZero(0.0) && f.domain_lo() == 0.0 && f.lo_in_domain()) {
    SolveReport rep;
    rep.x_values = GridFunction::Zero(n);
    rep.alpha = Multipliers::Zero(m);
    rep.entropy = 0.0;
    rep.moment_residual = Eigen::VectorXd::Zero(m);
    rep.lmm_residual = kInf;
    rep.iterations = 0;
    rep.converged = true;
    rep.stop_reason = "origin";
    return rep;
  }

  Multipliers alpha = init_multipliers(p, opts.init);
  Eigen::VectorXd g = moment_map(alpha, p);
  if (!g.allFinite())
    throw InitFailure("starting multipliers saturate the link function");
  Eigen::VectorXd r = g - b;
  double fval = 0.5 * r.squaredNorm();

  const double sat = std::numeric_limits<double>::max();
  bool converged = false;
  std::string stop = "max_iterations";
  int iter = 0;

  for (; iter < opts.max_iter; ++iter) {
    if (r.lpNorm<Eigen::Infinity>() <= opts.tol_moments) {
      converged = true;
      stop = "converged";
      break;
    }

    const Eigen::MatrixXd jac = jacobian(alpha, p);
    Eigen::VectorXd dir;
    double shift = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      Eigen::MatrixXd js = jac;
      if (shift > 0.0) js.diagonal().array() += shift;
      dir = Eigen::LDLT<Eigen::MatrixXd>(js).solve(-r);
      if (dir.allFinite()) break;
      shift = shift == 0.0
                  ? 1e-14 * jac.trace() / static_cast<double>(m)
                  : shift * 100.0;
    }
    double slope = dir.allFinite() ? r.dot(jac * dir) : 0.0;
    if (!(slope < 0.0)) {
      // Shifted or degenerate direction lost descent; fall back to steepest
      // descent on the residual norm.
      dir = -(jac * r);
      slope = -dir.squaredNorm();
      if (!(slope < 0.0)) {
        stop = "step_collapse";
        break;
      }
    }

    double t = 1.0;
    bool accepted = false;
    Multipliers cand;
    Eigen::VectorXd gc;
    double fc = 0.0;
    for (int h = 0; h <= opts.max_halvings; ++h, t /= 2.0) {
      cand = alpha + t * dir;
      const Eigen::VectorXd s = bm * cand;
      bool ok = true;
      GridFunction x(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!f.in_link_domain(s[i])) {
          ok = false;
          break;
        }
        x[i] = f.link(s[i]);
        if (x[i] >= sat) {  // clamped overflow: diverged iterate
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      gc = bm.transpose() * w.cwiseProduct(x);
      if (!gc.allFinite()) continue;
      fc = 0.5 * (gc - b).squaredNorm();
      if (fc <= fval + opts.armijo_c1 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stop = "step_collapse";
      break;
    }
    alpha = cand;
    g = gc;
    r = g - b;
    fval = fc;
  }

  if (!converged && r.lpNorm<Eigen::Infinity>() <= opts.tol_moments) {
    converged = true;
    stop = "converged";
  }

  SolveReport rep;
  rep.x_values = link_density(alpha, p);
  rep.alpha = alpha;
  rep.entropy = entropy_value(f, rep.x_values, p.measure()).value();
  rep.moment_residual = r;
  rep.lmm_residual = sup_multiplier_defect(p, rep.x_values, bm * alpha);
  rep.iterations = iter;
  rep.converged = converged;
  rep.stop_reason = stop;
  return rep;
}

}  // namespace entromin
