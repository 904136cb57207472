#include <doctest.h>

#include <cmath>

#include "caliblab/core/rng.hpp"
#include "caliblab/gof/ks.hpp"
#include "caliblab/testfn/test_functions.hpp"
#include "oracles.hpp"

using namespace caliblab;

TEST_CASE("apply examples") {
  ParamPoint scalar(1);
  scalar << 1.7;
  CHECK(evaluate(Identity{}, scalar) == 1.7);

  ParamPoint origin(2);
  origin << 0.0, 0.0;
  SigmoidProduct at_origin{Eigen::Vector2d(0.0, 0.0), 1.0};
  CHECK(evaluate(TestFunction{at_origin}, origin) == doctest::Approx(0.25).epsilon(1e-15));

  ParamPoint one(1);
  one << 1.0;
  SigmoidProduct sharp{Eigen::VectorXd::Zero(1), 2.0};
  const double expected = 1.0 / (1.0 + std::exp(4.0));
  CHECK(std::fabs(evaluate(TestFunction{sharp}, one) - expected) < 1e-12);
}

TEST_CASE("index bounds and dimension checks") {
  ParamPoint p(2);
  p << 1.0, 2.0;
  CHECK(evaluate(TestFunction{Coordinate{1}}, p) == 2.0);
  CHECK_THROWS_AS((void)evaluate(TestFunction{Coordinate{2}}, p), std::out_of_range);
  CHECK_THROWS_AS((void)evaluate(TestFunction{Evaluation{-1}}, p), std::out_of_range);
  CHECK_THROWS_AS((void)evaluate(TestFunction{Identity{}}, p), std::invalid_argument);
}

TEST_CASE("sigmoid product is strictly decreasing in every coordinate") {
  RngStream rng(7, 0);
  for (int rep = 0; rep < 200; ++rep) {
    Eigen::VectorXd center(3);
    ParamPoint x(3);
    for (int i = 0; i < 3; ++i) {
      center[i] = 4.0 * (rng.uniform() - 0.5);
      x[i] = 4.0 * (rng.uniform() - 0.5);
    }
    SigmoidProduct f{center, 0.5 + 3.0 * rng.uniform()};
    const double base = evaluate(TestFunction{f}, x);
    for (int i = 0; i < 3; ++i) {
      ParamPoint bumped = x;
      bumped[i] += 0.01;
      CHECK(evaluate(TestFunction{f}, bumped) < base);
    }
    CHECK(base > 0.0);
    CHECK(base < 1.0);
  }
}

TEST_CASE("sigmoid product approaches the orthant indicator as sharpness grows") {
  RngStream rng(8, 0);
  const Eigen::VectorXd center = Eigen::Vector2d(0.3, -0.4);
  SigmoidProduct f{center, 1e4};
  for (int rep = 0; rep < 20; ++rep) {
    ParamPoint x(2);
    // Stay away from the boundary, where the limit is not attained.
    for (int i = 0; i < 2; ++i) {
      double offset = 0.05 + rng.uniform();
      if (rng.uniform() < 0.5) offset = -offset;
      x[i] = center[i] + offset;
    }
    const double indicator = (x[0] <= center[0] && x[1] <= center[1]) ? 1.0 : 0.0;
    CHECK(std::fabs(evaluate(TestFunction{f}, x) - indicator) < 1e-3);
  }
}

TEST_CASE("pushforward cdf examples") {
  const PosteriorOutput tight = ScalarDistribution{Normal{1.0, 0.25}};
  CHECK(pushforward_cdf(tight, Identity{}, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

  GaussianVector g;
  g.mean = Eigen::Vector2d(0.0, 2.0);
  g.covariance = Eigen::Vector2d(1.0, 4.0).asDiagonal();
  CHECK(pushforward_cdf(PosteriorOutput{g}, Coordinate{1}, 2.0) ==
        doctest::Approx(0.5).epsilon(1e-12));

  const PosteriorOutput std_normal = ScalarDistribution{Normal{0.0, 1.0}};
  const double oracle = oracles::normal_cdf_quadrature(1.959964);
  CHECK(std::fabs(pushforward_cdf(std_normal, Identity{}, 1.959964) - 0.975) < 1e-7);
  CHECK(std::fabs(pushforward_cdf(std_normal, Identity{}, 1.959964) - oracle) < 1e-10);
}

TEST_CASE("unsupported pushforward pairs are rejected explicitly") {
  const PosteriorOutput scalar = ScalarDistribution{Normal{0.0, 1.0}};
  SigmoidProduct sig{Eigen::VectorXd::Zero(1), 1.0};
  CHECK_THROWS_AS((void)pushforward_cdf(scalar, TestFunction{sig}, 0.5),
                  NoClosedFormPushforward);

  GaussianVector g;
  g.mean = Eigen::Vector2d(0.0, 0.0);
  g.covariance = Eigen::Matrix2d::Identity();
  CHECK_THROWS_AS((void)pushforward_cdf(PosteriorOutput{g}, Identity{}, 0.0),
                  NoClosedFormPushforward);

  EmpiricalSample emp;
  emp.draws.resize(2, 1);
  emp.draws << 0.0, 1.0;
  CHECK_THROWS_AS((void)pushforward_cdf(PosteriorOutput{emp}, Identity{}, 0.5),
                  NoClosedFormPushforward);
}

TEST_CASE("pit of a monotone pushforward is uniform") {
  // Scalar posterior with the identity function.
  {
    const ScalarDistribution law = Normal{0.3, 2.0};
    RngStream rng(100, 0);
    std::vector<double> pits;
    pits.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
      ParamPoint theta(1);
      theta << sample(law, rng);
      pits.push_back(pushforward_cdf(PosteriorOutput{law}, Identity{},
                                     evaluate(TestFunction{Identity{}}, theta)));
    }
    CHECK(ks_uniformity_test(pits).p_value > 0.001);
  }
  // Gaussian vector with a coordinate function.
  {
    GaussianVector g;
    g.mean = Eigen::Vector2d(1.0, -2.0);
    g.covariance = (Eigen::Matrix2d() << 2.0, 0.6, 0.6, 1.0).finished();
    RngStream rng(101, 0);
    std::vector<double> pits;
    pits.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
      const ParamPoint theta = sample(g, rng);
      pits.push_back(pushforward_cdf(PosteriorOutput{g}, Coordinate{1},
                                     evaluate(TestFunction{Coordinate{1}}, theta)));
    }
    CHECK(ks_uniformity_test(pits).p_value > 0.001);
  }
}
