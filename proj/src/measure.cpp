#include "entromin/measure.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "entromin/errors.hpp"

namespace entromin {

namespace {

void validate_grid(const Eigen::VectorXd& nodes, const Eigen::VectorXd& weights) {
  if (nodes.size() != weights.size())
    throw BadGrid("node and weight counts differ");
  if (nodes.size() == 0) throw BadGrid("empty grid");
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) throw BadGrid("non-finite node");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw BadGrid("weights must be strictly positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw BadGrid("nodes must be strictly increasing");
  }
}

}  // namespace

DiscretizedMeasure::DiscretizedMeasure(GridKind kind, Eigen::VectorXd nodes,
                                       Eigen::VectorXd weights, double radius)
    : kind_(kind),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      radius_(radius) {
  validate_grid(nodes_, weights_);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int k) {
  if (k < 1) throw BadGrid("gauss_legendre: need at least one point");
  Eigen::VectorXd x(k), w(k);
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_k with the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < k; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = k * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[k - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[k - 1 - i] = w[i];
  }
  if (k % 2 == 1) x[k / 2] = 0.0;
  return {x, w};
}

DiscretizedMeasure DiscretizedMeasure::interval(double lo, double hi,
                                                Eigen::Index n,
                                                QuadratureRule rule) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw BadGrid("interval grid: need finite lo < hi");
  if (n < 2) throw BadGrid("interval grid: need n >= 2");

  Eigen::VectorXd nodes(n), weights(n);
  if (rule == QuadratureRule::Trapezoid) {
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      nodes[i] = lo + h * static_cast<double>(i);
      weights[i] = (i == 0 || i == n - 1) ? h / 2.0 : h;
    }
    nodes[n - 1] = hi;
  } else {
    // Composite Gauss-Legendre with panels of about 8 points.
    const Eigen::Index panels = (n + 7) / 8;
    const Eigen::Index base = n / panels;
    const Eigen::Index extra = n % panels;
    const double width = (hi - lo) / static_cast<double>(panels);
    Eigen::Index at = 0;
    for (Eigen::Index pnl = 0; pnl < panels; ++pnl) {
      const Eigen::Index k = base + (pnl < extra ? 1 : 0);
      const auto [gx, gw] = gauss_legendre(static_cast<int>(k));
      const double a = lo + width * static_cast<double>(pnl);
      const double mid = a + width / 2.0;
      for (Eigen::Index j = 0; j < k; ++j) {
        nodes[at + j] = mid + gx[j] * width / 2.0;
        weights[at + j] = gw[j] * width / 2.0;
      }
      at += k;
    }
  }
  return DiscretizedMeasure(GridKind::IntervalQuadrature, std::move(nodes),
                            std::move(weights), 0.0);
}

DiscretizedMeasure DiscretizedMeasure::real_line(double radius, Eigen::Index n,
                                                 QuadratureRule rule) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw BadGrid("real-line grid: need radius > 0");
  DiscretizedMeasure m = interval(-radius, radius, n, rule);
  m.kind_ = GridKind::RealLineTruncated;
  m.radius_ = radius;
  return m;
}

DiscretizedMeasure DiscretizedMeasure::counting(Eigen::Index n) {
  if (n < 1) throw BadGrid("counting grid: need n >= 1");
  Eigen::VectorXd nodes(n);
  for (Eigen::Index i = 0; i < n; ++i) nodes[i] = static_cast<double>(i + 1);
  return DiscretizedMeasure(GridKind::CountingTruncated, std::move(nodes),
                            Eigen::VectorXd::Ones(n), 0.0);
}

DiscretizedMeasure DiscretizedMeasure::explicit_weighted(
    Eigen::VectorXd nodes, Eigen::VectorXd weights) {
  return DiscretizedMeasure(GridKind::ExplicitWeighted, std::move(nodes),
                            std::move(weights), 0.0);
}

ExtReal integrate(const GridFunction& f, const DiscretizedMeasure& m) {
  if (f.size() != m.size())
    throw LengthMismatch("integrate: " + std::to_string(f.size()) +
                         " values on " + std::to_string(m.size()) + " nodes");
  const Eigen::VectorXd& w = m.weights();
  double pos = 0.0, neg = 0.0;
  bool pos_inf = false, neg_inf = false;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = f[i];
    if (std::isnan(v)) throw DomainError("integrate: NaN node value");
    if (v > 0.0) {
      if (std::isinf(v)) pos_inf = true;
      else pos += w[i] * v;
    } else if (v < 0.0) {
      if (std::isinf(v)) neg_inf = true;
      else neg += w[i] * (-v);
    }
  }
  if (std::isinf(pos)) pos_inf = true;
  if (std::isinf(neg)) neg_inf = true;
  // pos - neg under the convention inf - inf = +inf.
  if (pos_inf) return ExtReal::pos_inf();
  if (neg_inf) return ExtReal::neg_inf();
  return ExtReal(pos - neg);
}

ExtReal entropy_value(const EntropyFunction& f, const GridFunction& x,
                      const DiscretizedMeasure& m) {
  if (x.size() != m.size())
    throw LengthMismatch("entropy_value: value/node count mismatch");
  GridFunction g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i])) throw DomainError("entropy_value: NaN node value");
    g[i] = std::isinf(x[i]) ? std::numeric_limits<double>::infinity()
                            : f.value(x[i]).value();
  }
  return integrate(g, m);
}

}  // namespace entromin
