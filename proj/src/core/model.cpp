#include "caliblab/core/model.hpp"

#include <stdexcept>

namespace caliblab {

Eigen::Index belief_dimension(const Belief& belief) {
  if (std::holds_alternative<ScalarDistribution>(belief)) return 1;
  return std::get<GaussianVector>(belief).mean.size();
}

ParamPoint sample_belief(const Belief& belief, RngStream& rng) {
  if (const auto* s = std::get_if<ScalarDistribution>(&belief)) {
    ParamPoint theta(1);
    theta[0] = sample(*s, rng);
    return theta;
  }
  return sample(std::get<GaussianVector>(belief), rng);
}

ParamPoint sample_output(const PosteriorOutput& out, RngStream& rng) {
  if (const auto* s = std::get_if<ScalarDistribution>(&out)) {
    ParamPoint theta(1);
    theta[0] = sample(*s, rng);
    return theta;
  }
  if (const auto* g = std::get_if<GaussianVector>(&out)) {
    return sample(*g, rng);
  }
  const auto& emp = std::get<EmpiricalSample>(out);
  if (emp.draws.rows() < 1) {
    throw std::invalid_argument("EmpiricalSample: need at least one draw");
  }
  return emp.draws.row(static_cast<Eigen::Index>(
                           rng.bounded(static_cast<std::uint64_t>(emp.draws.rows()))))
      .transpose();
}

}  // namespace caliblab
