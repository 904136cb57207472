#include "caliblab/procedures/richardson.hpp"

#include <stdexcept>

namespace caliblab {

GaussianVector richardson_step(const GaussianVector& g, const Eigen::MatrixXd& a,
                               const Eigen::VectorXd& y, double step) {
  const Eigen::Index d = g.mean.size();
  if (a.rows() != d || a.cols() != d || y.size() != d || g.covariance.rows() != d ||
      g.covariance.cols() != d) {
    throw std::invalid_argument("richardson_step: dimension mismatch");
  }
  if (!(step > 0.0)) throw std::invalid_argument("richardson_step: step must be positive");
  const Eigen::MatrixXd t = Eigen::MatrixXd::Identity(d, d) - step * a;
  GaussianVector out;
  out.mean = t * g.mean + step * y;
  out.covariance = t * g.covariance * t.transpose();
  return out;
}

}  // namespace caliblab
