#pragma once

#include <functional>
#include <variant>

#include "caliblab/core/distributions.hpp"

namespace caliblab {

// Belief distributions: either a closed-form scalar law or a Gaussian
// vector.  Learning procedures consume one of these plus a dataset.
using Belief = std::variant<ScalarDistribution, GaussianVector>;

// Empirical distributional output: one sample per row.
struct EmpiricalSample {
  Eigen::MatrixXd draws;  // M x d, M >= 1
};

// Output of a learning procedure: an analytic law or an empirical sample
// set.
using PosteriorOutput = std::variant<ScalarDistribution, GaussianVector, EmpiricalSample>;

// theta -> P_theta, realised as a sampler.  The sampler must be a pure
// function of (theta, stream state).  An optional log density may be
// attached for procedures that need it.
struct DataGeneratingModel {
  std::function<Dataset(const ParamPoint&, RngStream&)> sample;
  std::function<double(const Dataset&, const ParamPoint&)> log_density;
};

// (belief, dataset) -> distribution over parameters, deterministic given
// the stream state.
struct LearningProcedure {
  std::function<PosteriorOutput(const Belief&, const Dataset&, RngStream&)> infer;
};

inline bool is_empirical(const PosteriorOutput& out) {
  return std::holds_alternative<EmpiricalSample>(out);
}

inline PosteriorOutput to_output(const Belief& belief) {
  if (const auto* s = std::get_if<ScalarDistribution>(&belief)) return *s;
  return std::get<GaussianVector>(belief);
}

Eigen::Index belief_dimension(const Belief& belief);

// One parameter draw from a belief distribution.
ParamPoint sample_belief(const Belief& belief, RngStream& rng);

// One parameter draw from a distributional output.  Empirical output
// yields a uniformly chosen stored sample.
ParamPoint sample_output(const PosteriorOutput& out, RngStream& rng);

}  // namespace caliblab
