// Independent reference computations used to freeze expected values.
// Everything here is deliberately brute force and shares no code with the
// library implementations it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracles {

// High-precision cdf of the standard normal by composite Simpson
// quadrature of the density from 0 to x.
inline double normal_cdf_quadrature(double x) {
  const double sign = x < 0.0 ? -1.0 : 1.0;
  const double upper = std::fabs(x);
  const int panels = 20000;
  const double h = upper / panels;
  auto density = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
  };
  double sum = density(0.0) + density(upper);
  for (int i = 1; i < panels; ++i) {
    sum += density(i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  const double integral = sum * h / 3.0;
  return 0.5 + sign * integral;
}

// Kolmogorov-Smirnov statistic by scanning both one-sided gaps at every
// order statistic, written independently of the library routine.
inline double ks_brute_force(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double below = values[i] - static_cast<double>(i) / n;
    const double above = (static_cast<double>(i) + 1.0) / n - values[i];
    best = std::max({best, below, above});
  }
  return best;
}

// Kolmogorov asymptotic tail sum, direct summation.
inline double kolmogorov_tail_series(double x) {
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return 2.0 * sum;
}

inline double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / (static_cast<double>(v.size()) - 1.0);
}

// Spearman rank correlation (no tie handling; inputs are distinct).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
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
  const double ma = mean(ra), mb = mean(rb);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

}  // namespace oracles
