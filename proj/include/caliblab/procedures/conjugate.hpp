#pragma once

#include "caliblab/core/model.hpp"

namespace caliblab {

// Conjugate Gaussian-location posterior: belief Normal(m0, v0), likelihood
// y_i | theta ~ Normal(theta, obs_variance).
Normal bayes_gaussian_location(const Normal& belief, double obs_variance, const Dataset& y);

// Same, but with the sign of the data flipped before inference.  Weakly
// calibrated to the Gaussian location model yet not strongly calibrated.
Normal mirror_bayes(const Normal& belief, double obs_variance, const Dataset& y);

// Gaussian-location posterior with the likelihood raised to the power
// t in [0,1]; t = 1 is Bayes, t = 0 ignores the data.
Normal fractional_posterior(const Normal& belief, double obs_variance, double t,
                            const Dataset& y);

// The trivial procedure that returns its belief unchanged.
PosteriorOutput data_agnostic(const Belief& belief, const Dataset& y);

}  // namespace caliblab
