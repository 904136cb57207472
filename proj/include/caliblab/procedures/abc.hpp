#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "caliblab/core/model.hpp"

namespace caliblab {

struct AbcConfig {
  double tolerance = 1.0;        // epsilon >= 0; may be infinity (accept all)
  int ensemble_size = 100;       // M >= 1
  long max_proposals = 1000000;  // >= ensemble_size
  bool noisy = false;            // perturb the target summary by a ball draw
};

struct AbcExhausted : std::runtime_error {
  AbcExhausted(double rate, long proposals_used, long replicate)
      : std::runtime_error("abc_infer: proposal budget exhausted after " +
                           std::to_string(proposals_used) + " proposals (acceptance rate " +
                           std::to_string(rate) + ", replicate " + std::to_string(replicate) +
                           ")"),
        acceptance_rate(rate),
        proposals(proposals_used),
        replicate_id(replicate) {}
  double acceptance_rate;
  long proposals;
  long replicate_id;  // -1 unless attached by a harness
};

using SummaryFunction = std::function<Eigen::VectorXd(const Dataset&)>;

// One draw uniform on the closed unit ball in R^dim.
Eigen::VectorXd sample_unit_ball(Eigen::Index dim, RngStream& rng);

// Rejection-sampling ABC: propose theta from the belief, simulate a
// dataset, accept when the summary lies within `tolerance` of the target
// summary (Euclidean norm; a tolerance of zero accepts exact matches
// only).  With the noisy flag the target is the observed summary plus
// tolerance times a unit-ball draw, taken once per call.  Throws
// AbcExhausted, carrying the acceptance rate, if max_proposals is spent
// before ensemble_size acceptances.
EmpiricalSample abc_infer(const ScalarDistribution& belief, const DataGeneratingModel& model,
                          const SummaryFunction& summary, const AbcConfig& cfg,
                          const Dataset& y_obs, RngStream& rng);

}  // namespace caliblab
