#include "caliblab/procedures/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace caliblab {

namespace {

constexpr double kGradTol = 1e-10;
constexpr int kMaxIterations = 200;

void check_inputs(const Normal& belief, double dof, const Dataset& y) {
  if (!(dof > 0.0)) throw std::invalid_argument("laplace_student_t: dof must be positive");
  if (!(belief.variance > 0.0)) {
    throw std::invalid_argument("laplace_student_t: belief variance must be positive");
  }
  if (y.size() < 1) throw std::invalid_argument("laplace_student_t: empty dataset");
}

double data_median(const Dataset& y) {
  std::vector<double> v(y.data(), y.data() + y.size());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1, v.end());
    return 0.5 * (v[mid - 1] + hi);
  }
  return hi;
}

// Ascend from `start`; returns the located mode or NaN if |grad| stays
// above tolerance.
double newton_ascent(const Normal& belief, double dof, const Dataset& y, double start) {
  double theta = start;
  // Curvature of the negative log posterior is at most this everywhere,
  // which bounds safe gradient steps in non-concave regions.
  const double curvature_cap =
      1.0 / belief.variance + static_cast<double>(y.size()) * (dof + 1.0) / dof;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double grad = student_t_log_posterior_gradient(belief, dof, y, theta);
    if (std::fabs(grad) < kGradTol) {
      const double hess = student_t_log_posterior_hessian(belief, dof, y, theta);
      if (hess < 0.0) return theta;
      return std::numeric_limits<double>::quiet_NaN();  // stationary but not a max
    }
    const double hess = student_t_log_posterior_hessian(belief, dof, y, theta);
    const double step = (hess < 0.0) ? -grad / hess : grad / curvature_cap;
    if (std::fabs(step) < 1e-9 * (1.0 + std::fabs(theta))) {
      // Micro-step near a maximum: the quadratic model is trustworthy and
      // the objective change is below rounding, so skip the line search.
      theta += step;
      continue;
    }
    const double value = student_t_log_posterior(belief, dof, y, theta);
    const double tolerance = 1e-12 * (std::fabs(value) + 1.0);
    double scale = 1.0;
    for (;;) {
      if (student_t_log_posterior(belief, dof, y, theta + scale * step) >= value - tolerance) {
        theta += scale * step;
        break;
      }
      scale *= 0.5;
      if (scale <= 1e-14) return std::numeric_limits<double>::quiet_NaN();
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double student_t_log_posterior(const Normal& belief, double dof, const Dataset& y,
                               double theta) {
  const double dm = theta - belief.mean;
  double value = -0.5 * dm * dm / belief.variance;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double u = y[i] - theta;
    value -= 0.5 * (dof + 1.0) * std::log1p(u * u / dof);
  }
  return value;
}

double student_t_log_posterior_gradient(const Normal& belief, double dof, const Dataset& y,
                                        double theta) {
  double grad = (belief.mean - theta) / belief.variance;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double u = y[i] - theta;
    grad += (dof + 1.0) * u / (dof + u * u);
  }
  return grad;
}

double student_t_log_posterior_hessian(const Normal& belief, double dof, const Dataset& y,
                                       double theta) {
  double hess = -1.0 / belief.variance;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double u = y[i] - theta;
    const double denom = dof + u * u;
    hess += (dof + 1.0) * (u * u - dof) / (denom * denom);
  }
  return hess;
}

Normal laplace_student_t(const Normal& belief, double dof, const Dataset& y) {
  check_inputs(belief, dof, y);
  // Start at the mode a Gaussian likelihood of unit variance would give.
  const double conjugate_mean =
      (belief.mean / belief.variance + y.sum()) /
      (1.0 / belief.variance + static_cast<double>(y.size()));
  double mode = newton_ascent(belief, dof, y, conjugate_mean);
  if (std::isnan(mode)) {
    mode = newton_ascent(belief, dof, y, data_median(y));
  }
  if (std::isnan(mode)) {
    throw ConvergenceFailure("laplace_student_t: Newton iteration did not converge");
  }
  const double hess = student_t_log_posterior_hessian(belief, dof, y, mode);
  return Normal{mode, -1.0 / hess};
}

}  // namespace caliblab
