#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "entromin/dual_solver.hpp"
#include "entromin/errors.hpp"

using namespace entromin;

namespace {

constexpr double kNormalConst = 0.08106146679532726;  // 1 - ln(sqrt(2*pi))

std::vector<BasisFunction> monomials(int m) {
  std::vector<BasisFunction> basis;
  for (int k = 0; k < m; ++k) basis.push_back(BasisFunction::monomial(k));
  return basis;
}

MomentProblem pg3(const Eigen::Vector3d& b, double radius = 10.0,
                  Eigen::Index n = 400) {
  return MomentProblem(EntropyFunction(EntropyFamily::BoltzmannShannon),
                       DiscretizedMeasure::real_line(radius, n), monomials(3),
                       b);
}

Multipliers normal_alpha() {
  Multipliers a(3);
  a << kNormalConst, 0.0, -0.5;
  return a;
}

}  // namespace

TEST_CASE("link density inverts multiplier combinations") {
  auto p = pg3({1.0, 0.0, 1.0});
  const GridFunction x = link_density(normal_alpha(), p);
  const GridFunction ref = gaussian_solution({1.0, 0.0, 1.0}).tabulate(p.measure());
  for (Eigen::Index i = 0; i < p.num_nodes(); ++i)
    CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));

  MomentProblem pq(EntropyFunction(EntropyFamily::Quadratic),
                   DiscretizedMeasure::interval(0.0, 1.0, 12), monomials(2),
                   Eigen::Vector2d(1.0, 0.5));
  Multipliers aq(2);
  aq << 0.25, -1.5;
  const GridFunction xq = link_density(aq, pq);
  for (Eigen::Index i = 0; i < pq.num_nodes(); ++i)
    CHECK(xq[i] ==
          doctest::Approx(0.25 - 1.5 * pq.measure().nodes()[i]).epsilon(1e-14));

  MomentProblem pb(EntropyFunction(EntropyFamily::BoltzmannShannonMinusU),
                   DiscretizedMeasure::counting(4), monomials(1),
                   Eigen::VectorXd::Constant(1, 4.0));
  CHECK((link_density(Multipliers::Zero(1), pb).array() == 1.0).all());
}

TEST_CASE("link density reports the offending node") {
  MomentProblem pb(EntropyFunction(EntropyFamily::Burg),
                   DiscretizedMeasure::interval(0.0, 1.0, 8), monomials(2),
                   Eigen::Vector2d(1.0, 0.5));
  Multipliers a(2);
  a << -1.0, 2.0;  // s(t) = -1 + 2t crosses 0 at t = 0.5
  try {
    (void)link_density(a, pb);
    FAIL("expected LinkDomainError");
  } catch (const LinkDomainError& e) {
    CHECK(pb.measure().nodes()[static_cast<Eigen::Index>(e.node)] >= 0.5);
  }
}

TEST_CASE("moment map") {
  MomentProblem pq(EntropyFunction(EntropyFamily::Quadratic),
                   DiscretizedMeasure::interval(0.0, 1.0, 8,
                                                QuadratureRule::Trapezoid),
                   monomials(1), Eigen::VectorXd::Constant(1, 1.0));
  CHECK(moment_map(Multipliers::Constant(1, 0.7), pq)[0] ==
        doctest::Approx(0.7).epsilon(1e-13));

  auto p = pg3({1.0, 0.0, 1.0});
  const Eigen::VectorXd g = moment_map(normal_alpha(), p);
  CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(g[1]) <= 1e-6);
  CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-6));

  MomentProblem pc(EntropyFunction(EntropyFamily::BoltzmannShannonMinusU),
                   DiscretizedMeasure::counting(2), monomials(1),
                   Eigen::VectorXd::Constant(1, 2.0));
  CHECK(moment_map(Multipliers::Zero(1), pc)[0] == doctest::Approx(2.0));
}

TEST_CASE("jacobian structure") {
  MomentProblem pq(EntropyFunction(EntropyFamily::Quadratic),
                   DiscretizedMeasure::interval(-1.0, 1.0, 16), monomials(2),
                   Eigen::Vector2d(1.0, 0.0));
  const Eigen::MatrixXd j0 = jacobian(Multipliers::Zero(2), pq);
  Multipliers a(2);
  a << 3.0, -2.0;
  const Eigen::MatrixXd j1 = jacobian(a, pq);
  CHECK((j0 - j1).lpNorm<Eigen::Infinity>() <= 1e-14);
  CHECK(j0(0, 0) == doctest::Approx(2.0).epsilon(1e-12));

  MomentProblem pc(EntropyFunction(EntropyFamily::BoltzmannShannonMinusU),
                   DiscretizedMeasure::counting(3), monomials(1),
                   Eigen::VectorXd::Constant(1, 3.0));
  CHECK(jacobian(Multipliers::Zero(1), pc)(0, 0) == doctest::Approx(3.0));

  auto p = pg3({1.0, 0.0, 1.0}, 6.0, 60);
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> val(-0.4, 0.2);
  for (int rep = 0; rep < 5; ++rep) {
    Multipliers ar(3);
    ar << val(gen), val(gen), -0.3 + val(gen) * 0.1;
    const Eigen::MatrixXd j = jacobian(ar, p);
    CHECK((j - j.transpose()).lpNorm<Eigen::Infinity>() <=
          1e-14 * j.lpNorm<Eigen::Infinity>());
    const Eigen::LLT<Eigen::MatrixXd> llt(j);
    CHECK(llt.info() == Eigen::Success);
  }
}

TEST_CASE("initial multipliers") {
  auto p = pg3({1.0, 0.0, 1.0});
  CHECK(init_multipliers(p, InitStrategy::Zeros).isZero(0.0));

  const Multipliers lsq = init_multipliers(p, InitStrategy::LeastSquaresLogDensity);
  CHECK(lsq[0] == doctest::Approx(kNormalConst).epsilon(1e-8));
  CHECK(std::abs(lsq[1]) <= 1e-8);
  CHECK(lsq[2] == doctest::Approx(-0.5).epsilon(1e-8));

  MomentProblem pb(EntropyFunction(EntropyFamily::Burg),
                   DiscretizedMeasure::interval(0.0, 1.0, 16), monomials(2),
                   Eigen::Vector2d(1.0, 0.5));
  const Multipliers shifted = init_multipliers(pb, InitStrategy::Zeros);
  const Eigen::VectorXd s = pb.basis_matrix() * shifted;
  CHECK(s.maxCoeff() < 0.0);
}

TEST_CASE("solver reproduces the closed-form gaussian") {
  auto p = pg3({1.0, 0.0, 1.0});
  const SolveReport rep = solve(p);
  REQUIRE(rep.converged);
  CHECK(rep.moment_residual.lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK(rep.entropy == doctest::Approx(-1.4189385332046727).epsilon(1e-6));

  const GridFunction ref = gaussian_solution({1.0, 0.0, 1.0}).tabulate(p.measure());
  CHECK((rep.x_values - ref).lpNorm<Eigen::Infinity>() <= 1e-6);
  CHECK(rep.lmm_residual <= 1e-12);
}

TEST_CASE("origin targets short-circuit to the zero density") {
  auto p = pg3({0.0, 0.0, 0.0});
  const SolveReport rep = solve(p);
  REQUIRE(rep.converged);
  CHECK(rep.x_values.isZero(0.0));
  CHECK(rep.entropy == 0.0);
  CHECK(rep.iterations == 0);
}

TEST_CASE("quadratic single-constraint case is analytic") {
  MomentProblem p(EntropyFunction(EntropyFamily::Quadratic),
                  DiscretizedMeasure::interval(0.0, 1.0, 33), monomials(1),
                  Eigen::VectorXd::Constant(1, 1.0));
  const SolveReport rep = solve(p);
  REQUIRE(rep.converged);
  CHECK((rep.x_values.array() - 1.0).abs().maxCoeff() <= 1e-10);
  CHECK(rep.entropy == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("infeasible targets are rejected before iterating") {
  CHECK_THROWS_AS((void)solve(pg3({1.0, 1.0, 1.0})), InfeasibleTargets);
  CHECK_THROWS_AS((void)solve(pg3({1.0, 2.0, 1.0})), InfeasibleTargets);
  CHECK_THROWS_AS((void)solve(pg3({-1.0, 0.0, 1.0})), InfeasibleTargets);
}

TEST_CASE("iteration cap reports non-convergence with the best iterate") {
  SolverOptions opts;
  opts.max_iter = 1;
  const SolveReport rep = solve(pg3({1.0, 0.0, 1.0}), opts);
  CHECK(!rep.converged);
  CHECK(!rep.stop_reason.empty());
  CHECK(rep.x_values.size() == 400);
}

TEST_CASE("solver options are validated") {
  SolverOptions bad;
  bad.tol_moments = 0.0;
  CHECK_THROWS_AS((void)solve(pg3({1.0, 0.0, 1.0}), bad), DomainError);
  bad = SolverOptions{};
  bad.max_iter = 0;
  CHECK_THROWS_AS((void)solve(pg3({1.0, 0.0, 1.0}), bad), DomainError);
}

TEST_CASE("converged solutions are strictly interior") {
  std::vector<MomentProblem> problems;
  problems.push_back(pg3({1.0, 0.0, 1.0}));
  problems.push_back(
      MomentProblem(EntropyFunction(EntropyFamily::FermiDirac),
                    DiscretizedMeasure::interval(0.0, 1.0, 64), monomials(2),
                    Eigen::Vector2d(0.5, 0.3)));
  problems.push_back(
      MomentProblem(EntropyFunction(EntropyFamily::Burg),
                    DiscretizedMeasure::interval(0.0, 1.0, 48), monomials(2),
                    Eigen::Vector2d(1.0, 0.6)));
  for (const auto& p : problems) {
    const SolveReport rep = solve(p);
    REQUIRE(rep.converged);
    for (Eigen::Index i = 0; i < p.num_nodes(); ++i)
      CHECK(p.entropy().in_interior(rep.x_values[i]));
  }
}

TEST_CASE("initializations agree at the solution") {
  auto p = pg3({1.0, -0.3, 1.2});
  SolverOptions zeros, lsq;
  lsq.init = InitStrategy::LeastSquaresLogDensity;
  const SolveReport a = solve(p, zeros);
  const SolveReport b = solve(p, lsq);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK((a.x_values - b.x_values).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("target scaling is log-linear in the multipliers") {
  auto p1 = pg3({1.0, 0.0, 1.0});
  auto p2 = pg3({2.0, 0.0, 2.0});
  const SolveReport r1 = solve(p1);
  const SolveReport r2 = solve(p2);
  REQUIRE(r1.converged);
  REQUIRE(r2.converged);
  CHECK((r2.x_values - 2.0 * r1.x_values).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK(r2.alpha[0] - r1.alpha[0] == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(std::abs(r2.alpha[1] - r1.alpha[1]) <= 1e-8);
  CHECK(std::abs(r2.alpha[2] - r1.alpha[2]) <= 1e-8);
}
