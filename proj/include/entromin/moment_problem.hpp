#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "entromin/entropy.hpp"
#include "entromin/measure.hpp"

namespace entromin {

using Multipliers = Eigen::VectorXd;

class BasisFunction {
 public:
  static BasisFunction monomial(int degree);
  static BasisFunction tabulated(Eigen::VectorXd values);

  bool is_monomial() const { return degree_ >= 0; }
  int degree() const { return degree_; }
  const Eigen::VectorXd& tabulated_values() const { return values_; }

  // psi(t_i) over the measure's nodes.
  Eigen::VectorXd evaluate(const DiscretizedMeasure& m) const;

 private:
  BasisFunction(int degree, Eigen::VectorXd values)
      : degree_(degree), values_(std::move(values)) {}

  int degree_;  // -1 for tabulated
  Eigen::VectorXd values_;
};

// Full problem instance: minimize the entropy functional subject to the
// moment constraints given by the basis functions and targets.
class MomentProblem {
 public:
  MomentProblem(EntropyFunction entropy, DiscretizedMeasure measure,
                std::vector<BasisFunction> basis, Eigen::VectorXd targets);

  const EntropyFunction& entropy() const { return entropy_; }
  const DiscretizedMeasure& measure() const { return measure_; }
  const std::vector<BasisFunction>& basis() const { return basis_; }
  const Eigen::VectorXd& targets() const { return targets_; }
  Eigen::Index num_constraints() const { return targets_.size(); }
  Eigen::Index num_nodes() const { return measure_.size(); }

  // Node evaluations psi_k(t_i), one column per constraint.
  const Eigen::MatrixXd& basis_matrix() const { return basis_matrix_; }

  // Boltzmann-Shannon entropy with monomials (1, t, t^2) on a truncated
  // real-line grid: the configuration whose feasibility region and optimal
  // density are known in closed form.
  bool is_gaussian_pg3() const;

 private:
  EntropyFunction entropy_;
  DiscretizedMeasure measure_;
  std::vector<BasisFunction> basis_;
  Eigen::VectorXd targets_;
  Eigen::MatrixXd basis_matrix_;
};

Eigen::VectorXd moments(const GridFunction& x, const MomentProblem& p);
Eigen::VectorXd feasibility_residual(const GridFunction& x,
                                     const MomentProblem& p);

enum class FeasibilityClass {
  Origin,
  FeasibleInterior,
  InfeasibleBoundary,
  Infeasible,
};

struct FeasibilityVerdict {
  FeasibilityClass cls;
  double discriminant;  // b1*b3 - b2^2
  std::string note;
};

// Feasibility of targets (b1, b2, b3) for nonnegative densities against
// (1, t, t^2): the origin, the open cone b1 > 0, b3 > 0, |b2| < sqrt(b1*b3),
// its boundary (infeasible), or outright infeasible.
FeasibilityVerdict classify_gaussian_feasibility(const Eigen::Vector3d& b);

// (lhs, rhs) of the bound int|t*x| <= sqrt(int|x|) * sqrt(int t^2|x|).
std::pair<double, double> holder_bound(const GridFunction& x,
                                       const DiscretizedMeasure& m);

// Closed-form optimal density exp(-alpha*(t-beta)^2/2 + gamma) for targets in
// the feasible interior, with its entropy value.
struct GaussianSolution {
  double alpha;
  double beta;
  double gamma;
  double entropy;

  double density(double t) const;
  GridFunction tabulate(const DiscretizedMeasure& m) const;
};

GaussianSolution gaussian_solution(const Eigen::Vector3d& b);

// Targets (1, m, sigma2 + m^2) pinning unit mass, mean m, variance sigma2.
Eigen::Vector3d mean_variance_targets(double mean, double sigma2);

}  // namespace entromin
