#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "entromin/errors.hpp"
#include "entromin/measure.hpp"

using namespace entromin;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2Pi = 2.5066282746310002;

GridFunction std_normal(const DiscretizedMeasure& m) {
  GridFunction x(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i)
    x[i] = std::exp(-0.5 * m.nodes()[i] * m.nodes()[i]) / kSqrt2Pi;
  return x;
}

}  // namespace

TEST_CASE("trapezoid weights on four nodes") {
  auto m = DiscretizedMeasure::interval(0.0, 1.0, 4, QuadratureRule::Trapezoid);
  REQUIRE(m.size() == 4);
  const double h = 1.0 / 3.0;
  CHECK(m.weights()[0] == doctest::Approx(h / 2));
  CHECK(m.weights()[1] == doctest::Approx(h));
  CHECK(m.weights()[2] == doctest::Approx(h));
  CHECK(m.weights()[3] == doctest::Approx(h / 2));
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss-legendre grids integrate constants and monomials") {
  auto m1 = DiscretizedMeasure::interval(-1.0, 1.0, 10);
  CHECK(integrate(GridFunction::Ones(m1.size()), m1).value() ==
        doctest::Approx(2.0).epsilon(1e-12));

  auto m2 = DiscretizedMeasure::interval(0.0, 2.0, 50);
  CHECK(integrate(GridFunction(m2.nodes()), m2).value() ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("grid structure invariants") {
  for (auto rule :
       {QuadratureRule::GaussLegendreComposite, QuadratureRule::Trapezoid}) {
    auto m = DiscretizedMeasure::interval(-3.0, 5.0, 37, rule);
    CHECK(m.total_mass() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(m.weights().minCoeff() > 0.0);
    for (Eigen::Index i = 0; i + 1 < m.size(); ++i)
      CHECK(m.nodes()[i] < m.nodes()[i + 1]);
  }
}

TEST_CASE("single gauss-legendre panel is exact to degree 15") {
  auto m = DiscretizedMeasure::interval(0.0, 1.0, 8);
  for (int k = 0; k <= 15; ++k) {
    GridFunction f = m.nodes().array().pow(k);
    CHECK(integrate(f, m).value() ==
          doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
  }
}

TEST_CASE("gauss-legendre nodes and weights on [-1,1]") {
  for (int k : {1, 2, 5, 8, 13}) {
    auto [nodes, weights] = gauss_legendre(k);
    REQUIRE(nodes.size() == k);
    CHECK(weights.sum() == doctest::Approx(2.0).epsilon(1e-13));
    for (int i = 0; i < k; ++i) {
      CHECK(nodes[i] == doctest::Approx(-nodes[k - 1 - i]).epsilon(1e-13));
      CHECK(weights[i] == doctest::Approx(weights[k - 1 - i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("truncated real line reproduces gaussian integrals") {
  auto m = DiscretizedMeasure::real_line(10.0, 400);
  CHECK(m.kind() == GridKind::RealLineTruncated);
  CHECK(m.radius() == 10.0);

  GridFunction g(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i)
    g[i] = std::exp(-0.5 * m.nodes()[i] * m.nodes()[i]);
  CHECK(integrate(g, m).value() == doctest::Approx(kSqrt2Pi).epsilon(1e-10));

  GridFunction tg = m.nodes().cwiseProduct(g);
  CHECK(std::abs(integrate(tg, m).value()) <= 1e-12);

  GridFunction ttg = m.nodes().cwiseProduct(tg);
  CHECK(integrate(ttg, m).value() == doctest::Approx(kSqrt2Pi).epsilon(1e-8));
}

TEST_CASE("counting grids") {
  auto m3 = DiscretizedMeasure::counting(3);
  CHECK(m3.kind() == GridKind::CountingTruncated);
  CHECK(m3.nodes()[0] == 1.0);
  CHECK(m3.nodes()[1] == 2.0);
  CHECK(m3.nodes()[2] == 3.0);
  CHECK((m3.weights().array() == 1.0).all());

  auto m1 = DiscretizedMeasure::counting(1);
  CHECK(m1.size() == 1);
  CHECK(m1.nodes()[0] == 1.0);

  auto m5 = DiscretizedMeasure::counting(5);
  CHECK(integrate(GridFunction::Ones(5), m5).value() == 5.0);
}

TEST_CASE("grid construction rejects bad requests") {
  CHECK_THROWS_AS(DiscretizedMeasure::interval(1.0, 0.0, 8), BadGrid);
  CHECK_THROWS_AS(DiscretizedMeasure::interval(0.0, 1.0, 1), BadGrid);
  CHECK_THROWS_AS(DiscretizedMeasure::real_line(-2.0, 8), BadGrid);
  CHECK_THROWS_AS(DiscretizedMeasure::counting(0), BadGrid);

  Eigen::VectorXd nodes(2), weights(2);
  nodes << 0.0, 1.0;
  weights << 1.0, 0.0;
  CHECK_THROWS_AS(DiscretizedMeasure::explicit_weighted(nodes, weights),
                  BadGrid);
  nodes << 1.0, 1.0;
  weights << 1.0, 1.0;
  CHECK_THROWS_AS(DiscretizedMeasure::explicit_weighted(nodes, weights),
                  BadGrid);
}

TEST_CASE("integration follows the extended-real conventions") {
  auto m = DiscretizedMeasure::counting(3);

  GridFunction f = GridFunction::Ones(3);
  f[1] = kInf;
  CHECK(integrate(f, m).is_pos_inf());

  f[0] = -kInf;
  CHECK(integrate(f, m).is_pos_inf());

  CHECK(integrate(GridFunction::Zero(3), m) == ExtReal(0.0));

  GridFunction neg = GridFunction::Ones(3);
  neg[2] = -kInf;
  CHECK(integrate(neg, m).is_neg_inf());

  CHECK_THROWS_AS((void)integrate(GridFunction::Zero(2), m), LengthMismatch);
}

TEST_CASE("entropy functional values") {
  EntropyFunction bs(EntropyFamily::BoltzmannShannon);
  auto m = DiscretizedMeasure::real_line(10.0, 400);

  CHECK(entropy_value(bs, GridFunction::Zero(m.size()), m) == ExtReal(0.0));

  GridFunction bad = std_normal(m);
  bad[5] = -1.0;
  CHECK(entropy_value(bs, bad, m).is_pos_inf());

  CHECK(entropy_value(bs, std_normal(m), m).value() ==
        doctest::Approx(-1.4189385332046727).epsilon(1e-6));
}

TEST_CASE("integral monotonicity on random dominated pairs") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> val(-4.0, 4.0);
  std::uniform_real_distribution<double> bump(0.0, 3.0);
  std::uniform_int_distribution<int> coin(0, 19);
  auto m = DiscretizedMeasure::interval(0.0, 1.0, 24);

  for (int rep = 0; rep < 1000; ++rep) {
    GridFunction x(m.size()), y(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      x[i] = coin(gen) == 0 ? -kInf : val(gen);
      y[i] = x[i] + bump(gen);
      if (coin(gen) == 0) y[i] = kInf;
      if (std::isinf(x[i]) && x[i] > 0) y[i] = kInf;
    }
    CHECK(integrate(x, m) <= integrate(y, m));
  }
}

TEST_CASE("subtracting a finite-integral nonnegative part") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  std::uniform_int_distribution<int> coin(0, 24);
  auto m = DiscretizedMeasure::interval(-1.0, 1.0, 16);

  for (int rep = 0; rep < 1000; ++rep) {
    GridFunction x(m.size()), y(m.size()), z(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      x[i] = coin(gen) == 0 ? kInf : val(gen);
      y[i] = val(gen);
      z[i] = ext_add(ExtReal(x[i]), ExtReal(-y[i])).value();
    }
    const ExtReal lhs = integrate(z, m);
    const ExtReal rhs = ext_add(integrate(x, m), -integrate(y, m));
    if (lhs.is_finite())
      CHECK(lhs.value() == doctest::Approx(rhs.value()).epsilon(1e-12));
    else
      CHECK(lhs == rhs);
  }
}

TEST_CASE("additivity for finite integrals") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  auto m = DiscretizedMeasure::interval(0.0, 2.0, 16);

  for (int rep = 0; rep < 1000; ++rep) {
    GridFunction x(m.size()), y(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      x[i] = val(gen);
      y[i] = val(gen);
    }
    const double lhs = integrate(x + y, m).value();
    const double rhs =
        ext_add(integrate(x, m), integrate(y, m)).value();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("entropy functional is convex, strictly on distinct inputs") {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> val(0.1, 3.0);
  std::uniform_real_distribution<double> lam(0.1, 0.9);
  EntropyFunction bs(EntropyFamily::BoltzmannShannon);
  auto m = DiscretizedMeasure::interval(0.0, 1.0, 12);

  for (int rep = 0; rep < 200; ++rep) {
    GridFunction x(m.size()), y(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      x[i] = val(gen);
      y[i] = val(gen);
    }
    const double l = lam(gen);
    const double mid = entropy_value(bs, l * x + (1.0 - l) * y, m).value();
    const double chord = l * entropy_value(bs, x, m).value() +
                         (1.0 - l) * entropy_value(bs, y, m).value();
    CHECK(mid <= chord + 1e-12);
    if ((x - y).lpNorm<Eigen::Infinity>() > 1e-3) CHECK(mid < chord);
  }
}
