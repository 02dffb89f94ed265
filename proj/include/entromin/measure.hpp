#pragma once

#include <Eigen/Core>
#include <utility>

#include "entromin/entropy.hpp"
#include "entromin/ext_real.hpp"

namespace entromin {

// Node values aligned with a DiscretizedMeasure. Entries may be +-inf inside
// entropy evaluation; solver paths keep them finite.
using GridFunction = Eigen::VectorXd;

enum class GridKind {
  IntervalQuadrature,
  RealLineTruncated,
  CountingTruncated,
  ExplicitWeighted,
};

enum class QuadratureRule { GaussLegendreComposite, Trapezoid };

// Finite node/weight discretization of the measure space. Nodes are strictly
// increasing, weights strictly positive.
class DiscretizedMeasure {
 public:
  static DiscretizedMeasure interval(
      double lo, double hi, Eigen::Index n,
      QuadratureRule rule = QuadratureRule::GaussLegendreComposite);

  // Quadrature grid on [-R, R] standing in for Lebesgue measure on the line.
  static DiscretizedMeasure real_line(
      double radius, Eigen::Index n,
      QuadratureRule rule = QuadratureRule::GaussLegendreComposite);

  // Counting measure truncated to {1, ..., n}: nodes 1..n, unit weights.
  static DiscretizedMeasure counting(Eigen::Index n);

  static DiscretizedMeasure explicit_weighted(Eigen::VectorXd nodes,
                                              Eigen::VectorXd weights);

  GridKind kind() const { return kind_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  Eigen::Index size() const { return nodes_.size(); }
  double radius() const { return radius_; }
  double total_mass() const { return weights_.sum(); }

 private:
  DiscretizedMeasure(GridKind kind, Eigen::VectorXd nodes,
                     Eigen::VectorXd weights, double radius);

  GridKind kind_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  double radius_;
};

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int k);

// Integral of f against m, computed as the positive-part sum minus the
// negative-part sum so that infinite cases follow the ExtReal conventions.
ExtReal integrate(const GridFunction& f, const DiscretizedMeasure& m);

// Integral of phi composed with x; +inf as soon as any node leaves dom phi.
ExtReal entropy_value(const EntropyFunction& f, const GridFunction& x,
                      const DiscretizedMeasure& m);

}  // namespace entromin
