#pragma once

#include <vector>

#include "caliblab/gof/result.hpp"

namespace caliblab {

// One-sample Kolmogorov-Smirnov statistic against the uniform cdf on
// [0,1]: D_n = sup_x |F_hat(x) - x|, computed exactly from the order
// statistics.  Input values must lie in [0,1]; input order is irrelevant.
double ks_statistic(std::vector<double> values);

// P(D_n >= D) under uniformity.  Exact matrix evaluation for n <= 100,
// asymptotic Kolmogorov series with the standard finite-n correction
// above.  Monotone decreasing in D.
double ks_p_value(double d, long n);

// Convenience: statistic plus p-value in one record.
GofResult ks_uniformity_test(std::vector<double> values);

}  // namespace caliblab
