#pragma once

#include <utility>
#include <vector>

#include "caliblab/gof/result.hpp"

namespace caliblab {

// Histogram of rank statistics over bins of equal width (M+1)/B.
struct RankHistogram {
  std::vector<long> counts;
  int ensemble_size = 0;  // M
  int bins = 0;           // B, divides M+1
};

// Number of ensemble members strictly below `value`; ties count as
// non-less, so the result lies in {0, ..., M}.
int rank_statistic(const std::vector<double>& ensemble, double value);

// Pearson chi-squared test that ranks are discrete-uniform on {0..M}.
// Requires B | (M+1) and at least 5B ranks; the p-value is upper-tail
// from chi^2_{B-1}.
std::pair<RankHistogram, GofResult> rank_uniformity_test(const std::vector<int>& ranks,
                                                         int ensemble_size, int bins);

// Largest divisor of M+1 that keeps a readable histogram: 20 when
// possible, otherwise the largest divisor of M+1 no greater than 50,
// falling back to M+1 itself (one bin per rank).
int default_rank_bins(int ensemble_size);

}  // namespace caliblab
