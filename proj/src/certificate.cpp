#include "entromin/certificate.hpp"

#include <Eigen/QR>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "entromin/errors.hpp"

namespace entromin {

namespace {

// Deterministic standard normal draws (Box-Muller on the raw engine output,
// so direction sets are identical across platforms).
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform_pos();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

 private:
  double uniform_pos() {
    // 53-bit mantissa draw in (0, 1].
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Whether xbar + eps*v stays in dom phi for some eps > 0: v may not point
// below a closed lower endpoint or above a closed upper endpoint at nodes
// sitting within atol of that endpoint.
bool cone_admissible(const GridFunction& xbar, const GridFunction& v,
                     const EntropyFunction& f, double atol) {
  const double lo = f.domain_lo();
  const double hi = f.domain_hi();
  for (Eigen::Index i = 0; i < xbar.size(); ++i) {
    if (std::isfinite(lo) && xbar[i] - lo <= atol && v[i] < 0.0) return false;
    if (std::isfinite(hi) && hi - xbar[i] <= atol && v[i] > 0.0) return false;
  }
  return true;
}

// A candidate pinned to one domain endpoint at every node is the unique
// feasible point whenever some basis function is sign-definite: any feasible
// direction is one-signed nodewise, and pairing it against that basis
// function forces it to vanish.
bool pinned_and_uniquely_feasible(const GridFunction& xbar,
                                  const MomentProblem& p, double atol) {
  const EntropyFunction& f = p.entropy();
  const double lo = f.domain_lo();
  const double hi = f.domain_hi();
  const bool all_lo = std::isfinite(lo) && f.lo_in_domain() &&
                      ((xbar.array() - lo).abs() <= atol).all();
  const bool all_hi = std::isfinite(hi) && f.hi_in_domain() &&
                      ((xbar.array() - hi).abs() <= atol).all();
  if (!all_lo && !all_hi) return false;
  for (Eigen::Index k = 0; k < p.num_constraints(); ++k) {
    const auto col = p.basis_matrix().col(k).array();
    if ((col > 0.0).all() || (col < 0.0).all()) return true;
  }
  return false;
}

}  // namespace

ExtReal directional_derivative_along(const GridFunction& xbar,
                                     const GridFunction& u,
                                     const EntropyFunction& f,
                                     const DiscretizedMeasure& m) {
  if (xbar.size() != m.size() || u.size() != m.size())
    throw LengthMismatch("directional derivative: length mismatch");
  if (!u.allFinite())
    throw DomainError("directional derivative: non-finite direction");
  GridFunction g(xbar.size());
  for (Eigen::Index i = 0; i < xbar.size(); ++i)
    g[i] = ext_mul(f.derivative(xbar[i]), ExtReal(u[i])).value();
  return integrate(g, m);
}

ExtReal directional_derivative(const GridFunction& xbar, const GridFunction& x,
                               const EntropyFunction& f,
                               const DiscretizedMeasure& m) {
  if (xbar.size() != m.size() || x.size() != m.size())
    throw LengthMismatch("directional derivative: length mismatch");
  if (!entropy_value(f, xbar, m).is_finite())
    throw DomainError("directional derivative: base point entropy not finite");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!f.in_domain(x[i]))
      throw DomainError("directional derivative: target leaves dom phi at node " +
                        std::to_string(i));
  return directional_derivative_along(xbar, x - xbar, f, m);
}

double lmm_residual(const GridFunction& xbar, const Multipliers& alpha,
                    const MomentProblem& p) {
  if (xbar.size() != p.num_nodes())
    throw LengthMismatch("lmm_residual: value/node count mismatch");
  if (alpha.size() != p.num_constraints())
    throw LengthMismatch("lmm_residual: multiplier count mismatch");
  const EntropyFunction& f = p.entropy();
  const Eigen::VectorXd s = p.basis_matrix() * alpha;
  double sup = 0.0;
  for (Eigen::Index i = 0; i < xbar.size(); ++i) {
    if (!f.in_interior(xbar[i]))
      throw DomainError("lmm_residual: node " + std::to_string(i) +
                        " is not interior to dom phi");
    sup = std::max(sup, std::abs(f.derivative(xbar[i]).value() - s[i]));
  }
  return sup;
}

Multipliers best_multipliers(const GridFunction& xbar, const MomentProblem& p) {
  if (xbar.size() != p.num_nodes())
    throw LengthMismatch("best_multipliers: value/node count mismatch");
  const EntropyFunction& f = p.entropy();
  Eigen::VectorXd y(xbar.size());
  for (Eigen::Index i = 0; i < xbar.size(); ++i) {
    if (!f.in_interior(xbar[i]))
      throw DomainError("best_multipliers: node " + std::to_string(i) +
                        " is not interior to dom phi");
    y[i] = f.derivative(xbar[i]).value();
  }
  const Eigen::VectorXd sw = p.measure().weights().cwiseSqrt();
  const Eigen::MatrixXd a = sw.asDiagonal() * p.basis_matrix();
  return a.colPivHouseholderQr().solve(sw.cwiseProduct(y));
}

std::vector<GridFunction> sample_feasible_directions(const MomentProblem& p,
                                                     int count,
                                                     std::uint64_t seed) {
  if (count < 1)
    throw DomainError("sample_feasible_directions: need count >= 1");
  const Eigen::Index n = p.num_nodes();
  const Eigen::Index m = p.num_constraints();
  if (n <= m)
    throw RankDeficientBasis(
        "sample_feasible_directions: moment operator has no null space");

  // Orthonormal basis of the null space of the weighted moment matrix.
  const Eigen::MatrixXd wb =
      p.measure().weights().asDiagonal() * p.basis_matrix();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(wb);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd null_basis = q.rightCols(n - m);
  const Eigen::Index nd = n - m;

  std::vector<GridFunction> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  // With enough requested directions, emit the spanning basis itself first;
  // otherwise random combinations overlap every null-space component
  // generically.
  if (count >= nd)
    for (Eigen::Index j = 0; j < nd; ++j) dirs.push_back(null_basis.col(j));

  NormalSampler normal(seed);
  while (static_cast<Eigen::Index>(dirs.size()) < count) {
    Eigen::VectorXd z(nd);
    for (Eigen::Index j = 0; j < nd; ++j) z[j] = normal();
    Eigen::VectorXd u = null_basis * z;
    const double norm = u.norm();
    if (norm < 1e-300) continue;
    dirs.push_back(u / norm);
  }
  return dirs;
}

InteriorityReport check_interiority(const GridFunction& xbar,
                                    const EntropyFunction& f) {
  InteriorityReport rep;
  for (Eigen::Index i = 0; i < xbar.size(); ++i)
    if (!f.in_interior(xbar[i])) rep.offending_nodes.push_back(i);
  rep.all_interior = rep.offending_nodes.empty();
  return rep;
}

CertificateStatus certify(const GridFunction& xbar, const MomentProblem& p,
                          const std::optional<Multipliers>& alpha,
                          const CertifyOptions& opts) {
  if (xbar.size() != p.num_nodes())
    throw LengthMismatch("certify: value/node count mismatch");
  if (!entropy_value(p.entropy(), xbar, p.measure()).is_finite())
    throw DomainError("certify: candidate entropy not finite");

  CertificateStatus st;
  st.feasibility_residual =
      feasibility_residual(xbar, p).lpNorm<Eigen::Infinity>();
  st.feasible = st.feasibility_residual <= opts.feasibility_tol;
  if (!st.feasible) {
    st.verdict = CertificateVerdict::Infeasible;
    return st;
  }

  // Multiplier route: sufficient on its own.
  if (check_interiority(xbar, p.entropy()).all_interior) {
    const Multipliers a = alpha ? *alpha : best_multipliers(xbar, p);
    st.lmm_residual = lmm_residual(xbar, a, p);
    if (*st.lmm_residual <= opts.lmm_tol) {
      st.verdict = CertificateVerdict::CertifiedOptimal;
      return st;
    }
  } else if (pinned_and_uniquely_feasible(xbar, p, opts.boundary_atol)) {
    st.verdict = CertificateVerdict::CertifiedOptimal;
    return st;
  }

  // Direction route: nonnegative pairing along every admissible sampled
  // direction and its negation. Certifies only when the sample spans the
  // whole null space; otherwise a clean sweep is still only supporting
  // evidence.
  const auto dirs = sample_feasible_directions(p, opts.directions, opts.seed);
  double min_dd = std::numeric_limits<double>::infinity();
  bool violated = false;
  int checked = 0;
  for (const auto& u : dirs) {
    for (const double sgn : {1.0, -1.0}) {
      const GridFunction v = sgn * u;
      if (!cone_admissible(xbar, v, p.entropy(), opts.boundary_atol)) continue;
      const ExtReal dd =
          directional_derivative_along(xbar, v, p.entropy(), p.measure());
      ++checked;
      min_dd = std::min(min_dd, dd.value());
      if (dd.value() < -opts.dd_tol) violated = true;
    }
  }
  st.directions_checked = checked;
  if (checked > 0) st.min_directional_derivative = min_dd;

  const bool spanning =
      static_cast<Eigen::Index>(opts.directions) >= p.num_nodes() - p.num_constraints();
  st.verdict = (!violated && spanning)
                   ? CertificateVerdict::CertifiedOptimal
                   : CertificateVerdict::FeasibleNotCertified;
  return st;
}

}  // namespace entromin
