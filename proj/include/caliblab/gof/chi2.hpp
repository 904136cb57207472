#pragma once

#include <vector>

#include "caliblab/gof/result.hpp"

namespace caliblab {

// Normal-quantile chi-squared test for uniformity of probability integral
// transforms: T = sum_i Phi^{-1}(pit_i)^2 is chi^2_n under the null.  The
// p-value is two-sided, 2 min(F(T), 1 - F(T)), so both under- and
// over-dispersion count as evidence.  Pits equal to 0 or 1 are rejected
// (infinite quantile); callers clamp or drop them.
GofResult chi2_pit_test(const std::vector<double>& pits);

}  // namespace caliblab
