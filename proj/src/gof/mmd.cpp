#include "caliblab/gof/mmd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace caliblab {

namespace {

double mmd2_biased(const Eigen::MatrixXd& kernel, const std::vector<int>& idx, int n, int m) {
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const int a = idx[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) sxx += kernel(a, idx[static_cast<std::size_t>(j)]);
    for (int j = 0; j < m; ++j) sxy += kernel(a, idx[static_cast<std::size_t>(n + j)]);
  }
  for (int i = 0; i < m; ++i) {
    const int a = idx[static_cast<std::size_t>(n + i)];
    for (int j = 0; j < m; ++j) syy += kernel(a, idx[static_cast<std::size_t>(n + j)]);
  }
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  // The biased estimator is nonnegative; rounding can dip a hair below.
  return std::max(0.0, sxx / (nn * nn) - 2.0 * sxy / (nn * mm) + syy / (mm * mm));
}

}  // namespace

GofResult mmd_permutation_test(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                               double bandwidth, int n_perm, RngStream& rng) {
  const int n = static_cast<int>(x.rows());
  const int m = static_cast<int>(y.rows());
  if (n < 2 || m < 2) throw std::invalid_argument("mmd_permutation_test: need >= 2 points per sample");
  if (x.cols() != y.cols()) throw std::invalid_argument("mmd_permutation_test: dimension mismatch");
  if (n_perm < 1) throw std::invalid_argument("mmd_permutation_test: need n_perm >= 1");
  if (!(bandwidth >= 0.0)) throw std::invalid_argument("mmd_permutation_test: bandwidth must be >= 0");

  Eigen::MatrixXd pooled(n + m, x.cols());
  pooled.topRows(n) = x;
  pooled.bottomRows(m) = y;

  const int total = n + m;
  Eigen::MatrixXd dist2(total, total);
  for (int i = 0; i < total; ++i) {
    dist2(i, i) = 0.0;
    for (int j = i + 1; j < total; ++j) {
      const double d2 = (pooled.row(i) - pooled.row(j)).squaredNorm();
      dist2(i, j) = d2;
      dist2(j, i) = d2;
    }
  }

  double bw = bandwidth;
  if (bw == 0.0) {
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(total) * (total - 1) / 2);
    for (int i = 0; i < total; ++i) {
      for (int j = i + 1; j < total; ++j) dists.push_back(std::sqrt(dist2(i, j)));
    }
    const std::size_t mid = dists.size() / 2;
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
    bw = dists[mid];
    if (!(bw > 0.0)) bw = 1.0;
  }

  const Eigen::MatrixXd kernel = (-dist2 / (2.0 * bw * bw)).array().exp().matrix();

  std::vector<int> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), 0);
  const double observed = mmd2_biased(kernel, idx, n, m);

  long exceed = 0;
  for (int p = 0; p < n_perm; ++p) {
    for (int i = total - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i + 1)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    if (mmd2_biased(kernel, idx, n, m) >= observed) ++exceed;
  }
  const double p_value = static_cast<double>(1 + exceed) / static_cast<double>(n_perm + 1);
  return GofResult{"mmd-permutation", observed, p_value, static_cast<long>(total)};
}

}  // namespace caliblab
