#pragma once

#include "caliblab/core/model.hpp"

namespace caliblab {

// Shape parameters of the g-and-k quantile distribution; the location is
// supplied separately.  Monotonicity of the quantile function requires
// b > 0 and k > -0.5.
struct GKParams {
  double b = 1.0;
  double g = 2.0;
  double k = 0.5;
};

// The g-and-k transform of a standard normal variate u:
//   theta + b (1 + 0.8 (1 - e^{-gu}) / (1 + e^{-gu})) u (1 + u^2)^k.
double gk_transform(double theta, const GKParams& params, double u);

// n draws obtained by pushing iid standard normals through the transform.
Dataset gk_simulate(double theta, const GKParams& params, int n, RngStream& rng);

// The five quartiles (min, Q1, median, Q3, max) of a dataset with at
// least five entries, using linear interpolation between order statistics.
Eigen::VectorXd quartile_summary(const Dataset& y);

}  // namespace caliblab
