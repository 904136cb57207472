// Scratch probe harness (not registered with ctest).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "caliblab/calib/harness.hpp"
#include "caliblab/core/special.hpp"
#include "caliblab/procedures/laplace.hpp"

using namespace caliblab;

namespace {

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      r[order[pos]] = static_cast<double>(pos);
    }
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= ra.size();
  mb /= rb.size();
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

}  // namespace

int main() {
  const Belief prior = ScalarDistribution{Normal{0.0, 1.0}};
  std::vector<double> rhos;
  for (int seed = 0; seed < 15; ++seed) {
    std::vector<double> stats(20), nus(20);
    for (int nu = 1; nu <= 20; ++nu) {
      DataGeneratingModel model;
      model.sample = [nu](const ParamPoint& theta, RngStream& rng) {
        const ScalarDistribution law = StudentT{theta[0], 1.0, static_cast<double>(nu)};
        Dataset y(5);
        for (int i = 0; i < 5; ++i) y[i] = sample(law, rng);
        return y;
      };
      LearningProcedure proc;
      proc.infer = [nu](const Belief& belief, const Dataset& y, RngStream&) -> PosteriorOutput {
        const auto& p = std::get<Normal>(std::get<ScalarDistribution>(belief));
        return ScalarDistribution{laplace_student_t(p, nu, y)};
      };
      const CalibrationReport r = strong_test(
          proc, prior, model, Identity{}, 100000,
          RngStream(77000 + static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(nu)),
          ExecutionConfig{}, FailurePolicy::Skip);
      stats[static_cast<std::size_t>(nu - 1)] = r.gof.statistic;
      nus[static_cast<std::size_t>(nu - 1)] = nu;
    }
    rhos.push_back(spearman(stats, nus));
    std::printf("seed %d: rho = %.3f\n", seed, rhos.back());
  }
  double mean = 0;
  for (double r : rhos) mean += r;
  mean /= rhos.size();
  double ss = 0;
  for (double r : rhos) ss += (r - mean) * (r - mean);
  std::printf("mean rho over 15 seeds: %.3f (sd %.3f)\n", mean,
              std::sqrt(ss / (rhos.size() - 1)));
  return 0;
}
