#include "caliblab/procedures/gk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace caliblab {

double gk_transform(double theta, const GKParams& params, double u) {
  if (!(params.b > 0.0) || !(params.k > -0.5)) {
    throw std::invalid_argument("gk_transform: require b > 0 and k > -0.5");
  }
  const double e = std::exp(-params.g * u);
  const double skew = 1.0 + 0.8 * (1.0 - e) / (1.0 + e);
  double kurt;
  if (params.k == 0.5) {
    kurt = std::sqrt(1.0 + u * u);
  } else if (params.k == 0.0) {
    kurt = 1.0;
  } else {
    kurt = std::pow(1.0 + u * u, params.k);
  }
  return theta + params.b * skew * u * kurt;
}

Dataset gk_simulate(double theta, const GKParams& params, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gk_simulate: need n >= 1");
  Dataset y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = gk_transform(theta, params, rng.normal());
  }
  return y;
}

Eigen::VectorXd quartile_summary(const Dataset& y) {
  const Eigen::Index n = y.size();
  if (n < 5) throw std::invalid_argument("quartile_summary: need at least 5 observations");
  std::vector<double> sorted(y.data(), y.data() + n);
  std::sort(sorted.begin(), sorted.end());
  Eigen::VectorXd q(5);
  for (int j = 0; j < 5; ++j) {
    const double h = 0.25 * j * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - std::floor(h);
    q[j] = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  }
  return q;
}

}  // namespace caliblab
