#pragma once

#include "caliblab/core/distributions.hpp"

namespace caliblab {

// One step of the probabilistic Richardson iteration for the linear
// system A theta = y: the affine map theta -> (I - step A) theta + step y,
// pushed through a Gaussian.  Mean and covariance transform as
//   mean' = (I - step A) mean + step y,
//   cov'  = (I - step A) cov (I - step A)^T.
GaussianVector richardson_step(const GaussianVector& g, const Eigen::MatrixXd& a,
                               const Eigen::VectorXd& y, double step);

}  // namespace caliblab
