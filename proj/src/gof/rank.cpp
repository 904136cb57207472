#include "caliblab/gof/rank.hpp"

#include <algorithm>
#include <stdexcept>

#include "caliblab/core/special.hpp"

namespace caliblab {

int rank_statistic(const std::vector<double>& ensemble, double value) {
  if (ensemble.empty()) throw std::invalid_argument("rank_statistic: empty ensemble");
  int r = 0;
  for (double e : ensemble) {
    if (e < value) ++r;
  }
  return r;
}

std::pair<RankHistogram, GofResult> rank_uniformity_test(const std::vector<int>& ranks,
                                                         int ensemble_size, int bins) {
  const int m = ensemble_size;
  if (m < 1 || bins < 2) {
    throw std::invalid_argument("rank_uniformity_test: need M >= 1 and B >= 2");
  }
  if ((m + 1) % bins != 0) {
    throw std::invalid_argument("rank_uniformity_test: B must divide M+1");
  }
  if (static_cast<long>(ranks.size()) < 5L * bins) {
    throw std::invalid_argument("rank_uniformity_test: need at least 5B ranks");
  }
  RankHistogram hist;
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  hist.ensemble_size = m;
  hist.bins = bins;
  for (int r : ranks) {
    if (r < 0 || r > m) {
      throw std::invalid_argument("rank_uniformity_test: rank outside {0..M}");
    }
    const long bin = static_cast<long>(r) * bins / (m + 1);
    ++hist.counts[static_cast<std::size_t>(bin)];
  }
  const double expected = static_cast<double>(ranks.size()) / bins;
  double stat = 0.0;
  for (long c : hist.counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  const double p = std::clamp(
      regularized_gamma_q(0.5 * (bins - 1), 0.5 * stat), 0.0, 1.0);
  return {hist, GofResult{"rank-uniform", stat, p, static_cast<long>(ranks.size())}};
}

int default_rank_bins(int ensemble_size) {
  const int mp1 = ensemble_size + 1;
  if (mp1 % 20 == 0) return 20;
  for (int b = std::min(50, mp1); b >= 2; --b) {
    if (mp1 % b == 0) return b;
  }
  return mp1;
}

}  // namespace caliblab
