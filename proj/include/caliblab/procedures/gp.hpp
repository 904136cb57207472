#pragma once

#include <functional>
#include <vector>

#include "caliblab/core/model.hpp"

namespace caliblab {

// Configuration shared by the hierarchical truth simulator and the
// simplified stationary fit.  The squared-exponential kernel is
// k(x,x') = exp(-(x-x')^2 / length_scale^2) on the uniform grid over
// [0,1] with grid_size points.
struct GpConfig {
  double length_scale = 0.1;
  int grid_size = 101;
  int n_obs = 10;
  std::function<double(double)> scale = [](double x) { return 1.0 + x; };
};

// Stationary zero-mean GP fit with amplitude estimated by maximum
// likelihood: amplitude2 = y^T K^{-1} y / N.  Prediction at x is
// Normal(k_x^T K^{-1} y, amplitude2 (1 - k_x^T K^{-1} k_x)).
class StationaryGpFit {
 public:
  StationaryGpFit(const GpConfig& cfg, Eigen::VectorXd x_obs, const Eigen::VectorXd& y_obs);

  double amplitude2() const { return amplitude2_; }
  Normal predict(double x) const;

  // Joint Gaussian over a set of points (diagonal jitter keeps the
  // covariance positive definite at observation sites).
  GaussianVector predict_grid(const Eigen::VectorXd& xs) const;

 private:
  Eigen::VectorXd kernel_column(double x) const;

  double length_scale_;
  double amplitude2_;
  Eigen::VectorXd x_obs_;
  Eigen::VectorXd alpha_;  // K^{-1} y
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

StationaryGpFit gp_fit_stationary(const GpConfig& cfg, const Eigen::VectorXd& x_obs,
                                  const Eigen::VectorXd& y_obs);

// One draw from the hierarchical truth: g ~ GP(0,k) on the grid,
// theta(x) = scale(x) g(x), with n_obs observation sites sampled
// uniformly, snapped to distinct grid points, and observed without noise.
struct GpTruth {
  Eigen::VectorXd grid;           // grid_size points on [0,1]
  Eigen::VectorXd theta_on_grid;  // the function-valued parameter
  std::vector<int> obs_index;     // distinct grid indices, size n_obs
  Eigen::VectorXd x_obs;
  Eigen::VectorXd y_obs;          // equals theta at the observation sites
};

GpTruth gp_simulate_truth(const GpConfig& cfg, RngStream& rng);

}  // namespace caliblab
