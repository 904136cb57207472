#include "caliblab/procedures/conjugate.hpp"

#include <stdexcept>

namespace caliblab {

Normal bayes_gaussian_location(const Normal& belief, double obs_variance, const Dataset& y) {
  if (!(obs_variance > 0.0)) {
    throw std::invalid_argument("bayes_gaussian_location: obs_variance must be positive");
  }
  if (y.size() < 1) {
    throw std::invalid_argument("bayes_gaussian_location: empty dataset");
  }
  const double precision = 1.0 / belief.variance + static_cast<double>(y.size()) / obs_variance;
  const double mean = (belief.mean / belief.variance + y.sum() / obs_variance) / precision;
  return Normal{mean, 1.0 / precision};
}

Normal mirror_bayes(const Normal& belief, double obs_variance, const Dataset& y) {
  return bayes_gaussian_location(belief, obs_variance, -y);
}

Normal fractional_posterior(const Normal& belief, double obs_variance, double t,
                            const Dataset& y) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("fractional_posterior: t must lie in [0,1]");
  }
  if (!(obs_variance > 0.0)) {
    throw std::invalid_argument("fractional_posterior: obs_variance must be positive");
  }
  if (y.size() < 1) {
    throw std::invalid_argument("fractional_posterior: empty dataset");
  }
  if (t == 0.0) return belief;
  const double precision =
      1.0 / belief.variance + t * static_cast<double>(y.size()) / obs_variance;
  const double mean =
      (belief.mean / belief.variance + t * y.sum() / obs_variance) / precision;
  return Normal{mean, 1.0 / precision};
}

PosteriorOutput data_agnostic(const Belief& belief, const Dataset&) {
  return to_output(belief);
}

}  // namespace caliblab
