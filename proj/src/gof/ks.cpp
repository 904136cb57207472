#include "caliblab/gof/ks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace caliblab {

namespace {

// P(D_n < d) by the Marsaglia-Tsang-Wang matrix method.
double kolmogorov_cdf_exact(long n, double d) {
  const double s = d * d * static_cast<double>(n);
  if (s > 7.24 || (s > 3.76 && n > 99)) {
    return 1.0 - 2.0 * std::exp(-(2.000071 + 0.331 / std::sqrt(static_cast<double>(n)) +
                                  1.409 / static_cast<double>(n)) *
                                s);
  }
  const int k = static_cast<int>(std::ceil(static_cast<double>(n) * d));
  const int m = 2 * k - 1;
  const double h = k - static_cast<double>(n) * d;

  std::vector<double> H(static_cast<std::size_t>(m) * m, 0.0);
  auto at = [m](std::vector<double>& a, int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * m + j];
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      at(H, i, j) = (i - j + 1 < 0) ? 0.0 : 1.0;
    }
  }
  for (int i = 0; i < m; ++i) {
    at(H, i, 0) -= std::pow(h, i + 1);
    at(H, m - 1, i) -= std::pow(h, m - i);
  }
  at(H, m - 1, 0) += (2.0 * h - 1.0 > 0.0) ? std::pow(2.0 * h - 1.0, m) : 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i - j + 1 > 0) {
        for (int g = 1; g <= i - j + 1; ++g) at(H, i, j) /= g;
      }
    }
  }

  // Q = H^n with periodic rescaling to avoid overflow.
  std::vector<double> Q = H;
  std::vector<double> tmp(static_cast<std::size_t>(m) * m, 0.0);
  int eQ = 0;
  auto matmul = [m](const std::vector<double>& a, const std::vector<double>& b,
                    std::vector<double>& out) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double sum = 0.0;
        for (int g = 0; g < m; ++g) {
          sum += a[static_cast<std::size_t>(i) * m + g] * b[static_cast<std::size_t>(g) * m + j];
        }
        out[static_cast<std::size_t>(i) * m + j] = sum;
      }
    }
  };

  long e = n;
  std::vector<double> P(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) at(P, i, i) = 1.0;
  int eP = 0;
  while (e > 0) {
    if (e & 1) {
      matmul(P, Q, tmp);
      P.swap(tmp);
      eP += eQ;
      if (at(P, k - 1, k - 1) > 1e140) {
        for (auto& v : P) v *= 1e-140;
        eP += 140;
      }
    }
    e >>= 1;
    if (e > 0) {
      matmul(Q, Q, tmp);
      Q.swap(tmp);
      eQ *= 2;
      if (at(Q, k - 1, k - 1) > 1e140) {
        for (auto& v : Q) v *= 1e-140;
        eQ += 140;
      }
    }
  }

  double result = at(P, k - 1, k - 1);
  for (long i = 1; i <= n; ++i) {
    result *= static_cast<double>(i) / static_cast<double>(n);
    if (result < 1e-140) {
      result *= 1e140;
      eP -= 140;
    }
  }
  return result * std::pow(10.0, eP);
}

// Kolmogorov limit distribution K(x) = P(sqrt(n) D_n <= x) as n -> inf.
double kolmogorov_limit_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1.18) {
    // Theta-function form, rapidly convergent for small x.
    const double v = std::exp(-M_PI * M_PI / (8.0 * x * x));
    return std::sqrt(2.0 * M_PI) / x *
           (v + std::pow(v, 9.0) + std::pow(v, 25.0) + std::pow(v, 49.0));
  }
  const double u = std::exp(-2.0 * x * x);
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::pow(u, static_cast<double>(k) * k);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return 1.0 - 2.0 * sum;
}

}  // namespace

double ks_statistic(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ks_statistic: empty input");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("ks_statistic: values must lie in [0,1]");
    }
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = values[i];
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - u,
                             u - static_cast<double>(i) / n));
  }
  return d;
}

double ks_p_value(double d, long n) {
  if (n < 1) throw std::invalid_argument("ks_p_value: need n >= 1");
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("ks_p_value: D must lie in [0,1]");
  }
  if (d <= 0.0) return 1.0;
  if (d >= 1.0) return 0.0;
  double p;
  if (n <= 100) {
    p = 1.0 - kolmogorov_cdf_exact(n, d);
  } else {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double x = d * (sqrt_n + 0.12 + 0.11 / sqrt_n);
    p = 1.0 - kolmogorov_limit_cdf(x);
  }
  return std::min(1.0, std::max(0.0, p));
}

GofResult ks_uniformity_test(std::vector<double> values) {
  const long n = static_cast<long>(values.size());
  const double d = ks_statistic(std::move(values));
  return GofResult{"ks-uniform", d, ks_p_value(d, n), n};
}

}  // namespace caliblab
