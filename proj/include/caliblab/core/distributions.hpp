#pragma once

#include <Eigen/Dense>
#include <utility>
#include <variant>

#include "caliblab/core/rng.hpp"

namespace caliblab {

// Parameter points and datasets are dense real vectors.
using ParamPoint = Eigen::VectorXd;
using Dataset = Eigen::VectorXd;

// Closed-form univariate laws.  All admit a strictly positive pdf on an
// open support interval, so their cdfs are continuous and strictly
// increasing there and the inverse cdf is a genuine function.

struct Normal {
  double mean = 0.0;
  double variance = 1.0;
};

struct StudentT {
  double location = 0.0;
  double scale = 1.0;
  double dof = 1.0;
};

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

struct LogNormal {
  double log_mean = 0.0;
  double log_sd = 1.0;
};

// Mixture (1 - contamination) * primary + contamination * contaminant.
struct NormalMixture {
  double contamination = 0.0;
  Normal primary;
  Normal contaminant;
};

using ScalarDistribution =
    std::variant<Normal, StudentT, Uniform, LogNormal, NormalMixture>;

double pdf(const ScalarDistribution& dist, double x);

// P(X <= x); saturates to 0/1 outside the support.
double cdf(const ScalarDistribution& dist, double x);

// Inverse cdf; p must lie strictly inside (0,1).
double quantile(const ScalarDistribution& dist, double p);

// One draw via the inverse-cdf transform of a uniform variate.
double sample(const ScalarDistribution& dist, RngStream& rng);

// Open support interval (lo, hi); unbounded ends are +-infinity.
std::pair<double, double> support(const ScalarDistribution& dist);

// Multivariate Gaussian with a symmetric positive definite covariance.
struct GaussianVector {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// One draw; throws if the covariance is not symmetric positive definite.
ParamPoint sample(const GaussianVector& g, RngStream& rng);

}  // namespace caliblab
