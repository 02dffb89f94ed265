#include "entromin/moment_problem.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "entromin/errors.hpp"

namespace entromin {

BasisFunction BasisFunction::monomial(int degree) {
  if (degree < 0) throw DomainError("monomial basis: degree must be >= 0");
  return BasisFunction(degree, Eigen::VectorXd());
}

BasisFunction BasisFunction::tabulated(Eigen::VectorXd values) {
  if (!values.allFinite())
    throw DomainError("tabulated basis: non-finite value");
  return BasisFunction(-1, std::move(values));
}

Eigen::VectorXd BasisFunction::evaluate(const DiscretizedMeasure& m) const {
  if (!is_monomial()) {
    if (values_.size() != m.size())
      throw LengthMismatch("tabulated basis length " +
                           std::to_string(values_.size()) + " on " +
                           std::to_string(m.size()) + " nodes");
    return values_;
  }
  if (degree_ == 0) return Eigen::VectorXd::Ones(m.size());
  return m.nodes().array().pow(degree_).matrix();
}

MomentProblem::MomentProblem(EntropyFunction entropy,
                             DiscretizedMeasure measure,
                             std::vector<BasisFunction> basis,
                             Eigen::VectorXd targets)
    : entropy_(entropy),
      measure_(std::move(measure)),
      basis_(std::move(basis)),
      targets_(std::move(targets)) {
  const Eigen::Index m = static_cast<Eigen::Index>(basis_.size());
  if (m < 1) throw DomainError("moment problem: need at least one constraint");
  if (targets_.size() != m)
    throw LengthMismatch("moment problem: " + std::to_string(targets_.size()) +
                         " targets for " + std::to_string(m) + " constraints");
  if (!targets_.allFinite())
    throw DomainError("moment problem: non-finite target");
  if (measure_.size() < m)
    throw RankDeficientBasis("moment problem: fewer nodes than constraints");

  basis_matrix_.resize(measure_.size(), m);
  for (Eigen::Index k = 0; k < m; ++k)
    basis_matrix_.col(k) = basis_[k].evaluate(measure_);

  const Eigen::MatrixXd a =
      measure_.weights().cwiseSqrt().asDiagonal() * basis_matrix_;
  const auto svd = a.jacobiSvd();
  const auto& sv = svd.singularValues();
  if (!(sv[m - 1] > 1e-10 * sv[0]))
    throw RankDeficientBasis(
        "basis functions are numerically dependent on this grid");
}

bool MomentProblem::is_gaussian_pg3() const {
  if (entropy_.family() != EntropyFamily::BoltzmannShannon) return false;
  if (measure_.kind() != GridKind::RealLineTruncated) return false;
  if (basis_.size() != 3) return false;
  for (int k = 0; k < 3; ++k)
    if (!basis_[k].is_monomial() || basis_[k].degree() != k) return false;
  return true;
}

Eigen::VectorXd moments(const GridFunction& x, const MomentProblem& p) {
  if (x.size() != p.num_nodes())
    throw LengthMismatch("moments: value/node count mismatch");
  if (!x.allFinite()) throw DomainError("moments: non-finite node value");
  return p.basis_matrix().transpose() *
         p.measure().weights().cwiseProduct(x);
}

Eigen::VectorXd feasibility_residual(const GridFunction& x,
                                     const MomentProblem& p) {
  return moments(x, p) - p.targets();
}

FeasibilityVerdict classify_gaussian_feasibility(const Eigen::Vector3d& b) {
  const double disc = b[0] * b[2] - b[1] * b[1];
  if (b[0] == 0.0 && b[1] == 0.0 && b[2] == 0.0)
    return {FeasibilityClass::Origin, 0.0,
            "b = 0: the zero density is the unique feasible point"};
  if (!(b[0] > 0.0) || !(b[2] > 0.0))
    return {FeasibilityClass::Infeasible, disc,
            "nonnegative densities force b1 > 0 and b3 > 0 away from the "
            "origin"};
  const double s = std::sqrt(b[0] * b[2]);
  const double gap = std::abs(b[1]) - s;
  if (std::abs(gap) <= 8.0 * std::numeric_limits<double>::epsilon() * s)
    return {FeasibilityClass::InfeasibleBoundary, disc,
            "|b2| = sqrt(b1*b3): equality in the moment bound forces the zero "
            "density, contradicting b1 > 0; the region's closure includes "
            "this face but no feasible density exists on it"};
  if (gap < 0.0)
    return {FeasibilityClass::FeasibleInterior, disc,
            "b1 > 0, b3 > 0, |b2| < sqrt(b1*b3)"};
  return {FeasibilityClass::Infeasible, disc, "|b2| > sqrt(b1*b3)"};
}

std::pair<double, double> holder_bound(const GridFunction& x,
                                       const DiscretizedMeasure& m) {
  if (x.size() != m.size())
    throw LengthMismatch("holder_bound: value/node count mismatch");
  const auto& t = m.nodes();
  const auto& w = m.weights();
  double lhs = 0.0, abs_mass = 0.0, second = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double ax = std::abs(x[i]);
    lhs += w[i] * std::abs(t[i]) * ax;
    abs_mass += w[i] * ax;
    second += w[i] * t[i] * t[i] * ax;
  }
  return {lhs, std::sqrt(abs_mass) * std::sqrt(second)};
}

double GaussianSolution::density(double t) const {
  return std::exp(-0.5 * alpha * (t - beta) * (t - beta) + gamma);
}

GridFunction GaussianSolution::tabulate(const DiscretizedMeasure& m) const {
  GridFunction x(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) x[i] = density(m.nodes()[i]);
  return x;
}

GaussianSolution gaussian_solution(const Eigen::Vector3d& b) {
  const FeasibilityVerdict verdict = classify_gaussian_feasibility(b);
  if (verdict.cls != FeasibilityClass::FeasibleInterior)
    throw InfeasibleTargets(
        "gaussian_solution: targets not in the feasible interior (" +
        verdict.note + ")");
  const double disc = b[0] * b[2] - b[1] * b[1];
  GaussianSolution sol;
  sol.alpha = b[0] * b[0] / disc;
  sol.beta = b[1] / b[0];
  sol.gamma = std::log(b[0] * b[0] / std::sqrt(2.0 * std::numbers::pi * disc));
  sol.entropy =
      b[0] *
      std::log(b[0] * b[0] /
               std::sqrt(2.0 * std::numbers::pi * std::numbers::e * disc));
  return sol;
}

Eigen::Vector3d mean_variance_targets(double mean, double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2) || !std::isfinite(mean))
    throw BadVariance("mean_variance_targets: need sigma2 > 0");
  return {1.0, mean, sigma2 + mean * mean};
}

}  // namespace entromin
