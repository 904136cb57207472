#include "caliblab/procedures/abc.hpp"

#include <cmath>

namespace caliblab {

Eigen::VectorXd sample_unit_ball(Eigen::Index dim, RngStream& rng) {
  Eigen::VectorXd direction(dim);
  double norm2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) direction[i] = rng.normal();
    norm2 = direction.squaredNorm();
  } while (norm2 == 0.0);
  const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
  return direction * (radius / std::sqrt(norm2));
}

EmpiricalSample abc_infer(const ScalarDistribution& belief, const DataGeneratingModel& model,
                          const SummaryFunction& summary, const AbcConfig& cfg,
                          const Dataset& y_obs, RngStream& rng) {
  if (cfg.ensemble_size < 1) throw std::invalid_argument("abc_infer: need ensemble_size >= 1");
  if (cfg.max_proposals < cfg.ensemble_size) {
    throw std::invalid_argument("abc_infer: max_proposals must cover the ensemble size");
  }
  if (!(cfg.tolerance >= 0.0)) throw std::invalid_argument("abc_infer: tolerance must be >= 0");
  if (!model.sample) throw std::invalid_argument("abc_infer: model has no sampler");

  Eigen::VectorXd target = summary(y_obs);
  if (cfg.noisy && cfg.tolerance > 0.0) {
    target += cfg.tolerance * sample_unit_ball(target.size(), rng);
  }

  EmpiricalSample out;
  out.draws.resize(cfg.ensemble_size, 1);
  int accepted = 0;
  long proposals = 0;
  ParamPoint proposal(1);
  while (accepted < cfg.ensemble_size) {
    if (proposals >= cfg.max_proposals) {
      throw AbcExhausted(static_cast<double>(accepted) / static_cast<double>(proposals),
                         proposals, -1);
    }
    proposal[0] = sample(belief, rng);
    const Dataset simulated = model.sample(proposal, rng);
    ++proposals;
    const double distance = (summary(simulated) - target).norm();
    if (distance < cfg.tolerance || distance == 0.0) {
      out.draws(accepted, 0) = proposal[0];
      ++accepted;
    }
  }
  return out;
}

}  // namespace caliblab
