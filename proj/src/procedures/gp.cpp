#include "caliblab/procedures/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace caliblab {

namespace {

constexpr double kJitter = 1e-10;

Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd& xa, const Eigen::VectorXd& xb,
                              double length_scale) {
  Eigen::MatrixXd k(xa.size(), xb.size());
  const double inv_l2 = 1.0 / (length_scale * length_scale);
  for (Eigen::Index i = 0; i < xa.size(); ++i) {
    for (Eigen::Index j = 0; j < xb.size(); ++j) {
      const double d = xa[i] - xb[j];
      k(i, j) = std::exp(-d * d * inv_l2);
    }
  }
  return k;
}

}  // namespace

StationaryGpFit::StationaryGpFit(const GpConfig& cfg, Eigen::VectorXd x_obs,
                                 const Eigen::VectorXd& y_obs)
    : length_scale_(cfg.length_scale), x_obs_(std::move(x_obs)) {
  if (!(length_scale_ > 0.0)) {
    throw std::invalid_argument("StationaryGpFit: length scale must be positive");
  }
  const Eigen::Index n = x_obs_.size();
  if (n < 1 || y_obs.size() != n) {
    throw std::invalid_argument("StationaryGpFit: observation size mismatch");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (x_obs_[i] == x_obs_[j]) {
        throw std::invalid_argument("StationaryGpFit: observation sites must be distinct");
      }
    }
  }
  Eigen::MatrixXd k = kernel_matrix(x_obs_, x_obs_, length_scale_);
  k.diagonal().array() += kJitter;
  llt_.compute(k);
  if (llt_.info() != Eigen::Success) {
    throw std::runtime_error("StationaryGpFit: kernel matrix singular after jitter");
  }
  alpha_ = llt_.solve(y_obs);
  amplitude2_ = std::max(y_obs.dot(alpha_) / static_cast<double>(n), kJitter);
}

Eigen::VectorXd StationaryGpFit::kernel_column(double x) const {
  Eigen::VectorXd k(x_obs_.size());
  const double inv_l2 = 1.0 / (length_scale_ * length_scale_);
  for (Eigen::Index i = 0; i < x_obs_.size(); ++i) {
    const double d = x - x_obs_[i];
    k[i] = std::exp(-d * d * inv_l2);
  }
  return k;
}

Normal StationaryGpFit::predict(double x) const {
  const Eigen::VectorXd kx = kernel_column(x);
  const double mean = kx.dot(alpha_);
  const double reduction = kx.dot(llt_.solve(kx));
  const double variance = amplitude2_ * std::max(1.0 - reduction, kJitter);
  return Normal{mean, variance};
}

GaussianVector StationaryGpFit::predict_grid(const Eigen::VectorXd& xs) const {
  const Eigen::MatrixXd kgo = kernel_matrix(xs, x_obs_, length_scale_);
  GaussianVector out;
  out.mean = kgo * alpha_;
  Eigen::MatrixXd kgg = kernel_matrix(xs, xs, length_scale_);
  Eigen::MatrixXd cov = amplitude2_ * (kgg - kgo * llt_.solve(kgo.transpose()));
  cov = 0.5 * (cov + cov.transpose());
  cov.diagonal().array() += kJitter * std::max(1.0, amplitude2_);
  out.covariance = std::move(cov);
  return out;
}

StationaryGpFit gp_fit_stationary(const GpConfig& cfg, const Eigen::VectorXd& x_obs,
                                  const Eigen::VectorXd& y_obs) {
  return StationaryGpFit(cfg, x_obs, y_obs);
}

GpTruth gp_simulate_truth(const GpConfig& cfg, RngStream& rng) {
  if (cfg.grid_size < 2 || cfg.n_obs < 1 || cfg.n_obs > cfg.grid_size) {
    throw std::invalid_argument("gp_simulate_truth: need 2 <= n_obs <= grid_size");
  }
  GpTruth truth;
  const int g = cfg.grid_size;
  truth.grid.resize(g);
  for (int i = 0; i < g; ++i) {
    truth.grid[i] = static_cast<double>(i) / static_cast<double>(g - 1);
  }
  Eigen::MatrixXd k = kernel_matrix(truth.grid, truth.grid, cfg.length_scale);
  k.diagonal().array() += kJitter;
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("gp_simulate_truth: grid kernel matrix not positive definite");
  }
  Eigen::VectorXd z(g);
  for (int i = 0; i < g; ++i) z[i] = rng.normal();
  const Eigen::VectorXd sample_path = llt.matrixL() * z;
  truth.theta_on_grid.resize(g);
  for (int i = 0; i < g; ++i) {
    truth.theta_on_grid[i] = cfg.scale(truth.grid[i]) * sample_path[i];
  }

  // Observation sites: uniform draws snapped to the nearest grid point,
  // re-drawn on collision so the fit sees distinct inputs.
  std::vector<bool> used(static_cast<std::size_t>(g), false);
  truth.obs_index.reserve(static_cast<std::size_t>(cfg.n_obs));
  while (static_cast<int>(truth.obs_index.size()) < cfg.n_obs) {
    const int idx = static_cast<int>(std::lround(rng.uniform() * (g - 1)));
    if (used[static_cast<std::size_t>(idx)]) continue;
    used[static_cast<std::size_t>(idx)] = true;
    truth.obs_index.push_back(idx);
  }
  truth.x_obs.resize(cfg.n_obs);
  truth.y_obs.resize(cfg.n_obs);
  for (int i = 0; i < cfg.n_obs; ++i) {
    truth.x_obs[i] = truth.grid[truth.obs_index[static_cast<std::size_t>(i)]];
    truth.y_obs[i] = truth.theta_on_grid[truth.obs_index[static_cast<std::size_t>(i)]];
  }
  return truth;
}

}  // namespace caliblab
