#include "entromin/oracle.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "entromin/errors.hpp"

namespace entromin {

namespace {

double clamp_interior(const EntropyFunction& f, double u, double margin) {
  const double lo = f.domain_lo();
  const double hi = f.domain_hi();
  if (std::isfinite(lo)) u = std::max(u, lo + margin);
  if (std::isfinite(hi)) u = std::min(u, hi - margin);
  return u;
}

void clip_to_interior(const EntropyFunction& f, GridFunction& x,
                      double margin) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = clamp_interior(f, x[i], margin);
}

bool strictly_interior(const EntropyFunction& f, const GridFunction& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!f.in_interior(x[i])) return false;
  return true;
}

// Fixed diagonal curvature metric: projections and gradient steps are scaled
// by 1/D nodewise, which keeps tail nodes (tiny density, huge curvature)
// from being disturbed by corrections meant for the bulk.
struct Metric {
  Eigen::VectorXd d;
  Eigen::LDLT<Eigen::MatrixXd> gram;
};

Metric build_metric(const MomentProblem& p, const GridFunction& x,
                    double margin) {
  Metric met;
  met.d.resize(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double u = clamp_interior(p.entropy(), x[i], margin);
    met.d[i] = std::clamp(p.entropy().second_derivative(u), 1e-12, 1e18);
  }
  const Eigen::VectorXd scale =
      p.measure().weights().cwiseQuotient(met.d);
  met.gram.compute(p.basis_matrix().transpose() * scale.asDiagonal() *
                   p.basis_matrix());
  return met;
}

// Moves x onto the target moments along the metric's preferred directions.
GridFunction project_in_metric(const MomentProblem& p, const Metric& met,
                               const GridFunction& x) {
  const Eigen::VectorXd r =
      p.targets() -
      p.basis_matrix().transpose() * p.measure().weights().cwiseProduct(x);
  const Eigen::VectorXd lambda = met.gram.solve(r);
  return x + (p.basis_matrix() * lambda).cwiseQuotient(met.d);
}

double objective(const MomentProblem& p, const GridFunction& x) {
  return entropy_value(p.entropy(), x, p.measure()).value();
}

std::vector<GridFunction> candidate_starts(const MomentProblem& p) {
  std::vector<GridFunction> starts;
  const EntropyFunction& f = p.entropy();
  const Eigen::Index n = p.num_nodes();

  if (p.is_gaussian_pg3()) {
    const Eigen::Vector3d b = p.targets();
    if (classify_gaussian_feasibility(b).cls ==
        FeasibilityClass::FeasibleInterior) {
      // Moment-matched bell curve with inflated variance, so the descent
      // genuinely has work to do while starting in a sane region.
      const double mean = b[1] / b[0];
      const double var = 1.5 * (b[2] / b[0] - mean * mean);
      GridFunction x(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double dt = p.measure().nodes()[i] - mean;
        x[i] = b[0] / std::sqrt(2.0 * std::numbers::pi * var) *
               std::exp(-0.5 * dt * dt / var);
      }
      starts.push_back(std::move(x));
    }
  }

  double u0 = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index k = 0; k < p.num_constraints(); ++k) {
    const Eigen::VectorXd col = p.basis_matrix().col(k);
    if ((col.array() == col[0]).all() && col[0] != 0.0) {
      u0 = p.targets()[k] / (col[0] * p.measure().total_mass());
      break;
    }
  }
  if (std::isfinite(u0) && f.in_interior(u0))
    starts.push_back(GridFunction::Constant(n, u0));

  const double fallback = f.family() == EntropyFamily::FermiDirac ? 0.5
                          : f.family() == EntropyFamily::Quadratic ? 0.0
                                                                   : 1.0;
  starts.push_back(GridFunction::Constant(n, fallback));
  return starts;
}

}  // namespace

GridFunction affine_project(const GridFunction& x, const MomentProblem& p) {
  if (x.size() != p.num_nodes())
    throw LengthMismatch("affine_project: value/node count mismatch");
  const Eigen::MatrixXd& bm = p.basis_matrix();
  const Eigen::VectorXd& w = p.measure().weights();
  const Eigen::MatrixXd gram = bm.transpose() * w.asDiagonal() * bm;
  const Eigen::VectorXd r = p.targets() - bm.transpose() * w.cwiseProduct(x);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const Eigen::VectorXd lambda = ldlt.solve(r);
  if (!lambda.allFinite())
    throw RankDeficientBasis("affine_project: singular constraint system");
  return x + bm * lambda;
}

GridFunction primal_solve(const MomentProblem& p, const OracleOptions& opts) {
  if (!(opts.step > 0.0) || !(opts.tol > 0.0) || opts.max_iter < 1 ||
      !(opts.interior_margin > 0.0))
    throw DomainError("oracle options: need positive step, tol, margin");

  const EntropyFunction& f = p.entropy();
  const Eigen::Index n = p.num_nodes();
  const double margin = opts.interior_margin;

  if (p.targets().isZero(0.0) && f.domain_lo() == 0.0 && f.lo_in_domain())
    return GridFunction::Zero(n);

  // Interior feasible start: alternate moment projection with clipping back
  // into the interior. The feasibility error introduced by each clip
  // contracts geometrically, so stop once a clipped (hence interior) iterate
  // meets the tolerance.
  GridFunction x;
  Metric met;
  bool have_start = false;
  for (const GridFunction& x0 : candidate_starts(p)) {
    met = build_metric(p, x0, margin);
    GridFunction cand = x0;
    for (int round = 0; round < 200; ++round) {
      cand = project_in_metric(p, met, cand);
      clip_to_interior(f, cand, margin);
      const double res =
          feasibility_residual(cand, p).lpNorm<Eigen::Infinity>();
      if (res <= 1e-9) {
        x = std::move(cand);
        have_start = true;
        break;
      }
    }
    if (have_start) break;
  }
  if (!have_start)
    throw NoInteriorPoint(
        "oracle: no strictly interior feasible start found");

  double fx = objective(p, x);
  double step = opts.step;
  bool fresh_metric = true;
  bool done = false;

  for (long iter = 1; iter <= opts.max_iter && !done; ++iter) {
    if (iter % opts.metric_refresh == 0) {
      met = build_metric(p, x, margin);
      fresh_metric = true;
    }

    // Projected gradient direction in the metric: -(phi'(x) - B*lambda)./D.
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i)
      g[i] = f.derivative(x[i]).value();
    const Eigen::VectorXd gd = g.cwiseQuotient(met.d);
    const Eigen::VectorXd lambda = met.gram.solve(
        p.basis_matrix().transpose() * p.measure().weights().cwiseProduct(gd));
    const Eigen::VectorXd dir =
        (p.basis_matrix() * lambda).cwiseQuotient(met.d) - gd;

    double t = step;
    bool accepted = false;
    GridFunction y;
    double fy = 0.0;
    for (int h = 0; h <= 60; ++h, t /= 2.0) {
      y = x + t * dir;
      clip_to_interior(f, y, margin);
      y = project_in_metric(p, met, y);
      if (!strictly_interior(f, y)) {
        clip_to_interior(f, y, margin);
        y = project_in_metric(p, met, y);
        if (!strictly_interior(f, y)) continue;
      }
      fy = objective(p, y);
      if (std::isfinite(fy) && fy <= fx) {
        accepted = true;
        break;
      }
    }

    if (!accepted) {
      if (!fresh_metric) {
        met = build_metric(p, x, margin);
        fresh_metric = true;
        continue;
      }
      done = true;  // no descent even with current curvature: at the floor
      break;
    }

    const double decrease = fx - fy;
    x = std::move(y);
    fx = fy;
    step = std::min(t * 2.0, 1.0);
    if (decrease <= opts.tol * (1.0 + std::abs(fx))) {
      if (!fresh_metric) {
        met = build_metric(p, x, margin);
        fresh_metric = true;
        continue;
      }
      done = true;
    } else {
      fresh_metric = false;
    }
  }

  if (!done)
    throw NotConverged("oracle: objective still decreasing at iteration cap");

  GridFunction polished = project_in_metric(p, met, x);
  if (strictly_interior(f, polished)) x = std::move(polished);
  return x;
}

CompareReport compare(const SolveReport& report, const GridFunction& oracle_x,
                      const MomentProblem& p, double sup_tol,
                      double objective_tol) {
  if (report.x_values.size() != oracle_x.size() ||
      oracle_x.size() != p.num_nodes())
    throw LengthMismatch("compare: value/node count mismatch");
  CompareReport c;
  c.sup_tol = sup_tol;
  c.objective_tol = objective_tol;
  const Eigen::VectorXd diff = report.x_values - oracle_x;
  c.sup_diff = diff.lpNorm<Eigen::Infinity>();
  c.weighted_l1_diff = p.measure().weights().dot(diff.cwiseAbs());
  c.objective_gap =
      std::abs(report.entropy -
               entropy_value(p.entropy(), oracle_x, p.measure()).value());
  c.agree = c.sup_diff <= sup_tol && c.objective_gap <= objective_tol;
  return c;
}

}  // namespace entromin
