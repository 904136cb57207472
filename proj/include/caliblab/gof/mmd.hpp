#pragma once

#include <Eigen/Dense>

#include "caliblab/core/rng.hpp"
#include "caliblab/gof/result.hpp"

namespace caliblab {

// Kernel two-sample permutation test on samples stored one per row.
// The statistic is the biased (V-statistic) squared maximum mean
// discrepancy under the Gaussian kernel exp(-||a-b||^2 / (2 bw^2)); it is
// nonnegative and zero iff the empirical measures coincide.  A bandwidth
// of 0 selects the median of the pooled pairwise distances.  The p-value
// is (1 + #{permuted >= observed}) / (n_perm + 1).
GofResult mmd_permutation_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                               double bandwidth, int n_perm, RngStream& rng);

}  // namespace caliblab
