#include "caliblab/gof/chi2.hpp"

#include <algorithm>
#include <stdexcept>

#include "caliblab/core/special.hpp"

namespace caliblab {

GofResult chi2_pit_test(const std::vector<double>& pits) {
  if (pits.empty()) throw std::invalid_argument("chi2_pit_test: empty input");
  double t = 0.0;
  for (double p : pits) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("chi2_pit_test: pit values must lie strictly in (0,1)");
    }
    const double z = normal_quantile(p);
    t += z * z;
  }
  const long n = static_cast<long>(pits.size());
  const double f = chi_squared_cdf(static_cast<double>(n), t);
  const double p = std::clamp(2.0 * std::min(f, 1.0 - f), 0.0, 1.0);
  return GofResult{"chi2-pit", t, p, n};
}

}  // namespace caliblab
