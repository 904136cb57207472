#include "caliblab/core/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "caliblab/core/special.hpp"

namespace caliblab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check(const Normal& d) {
  if (!std::isfinite(d.mean) || !(d.variance > 0.0) || !std::isfinite(d.variance)) {
    throw std::invalid_argument("Normal: require finite mean and variance > 0");
  }
}

void check(const StudentT& d) {
  if (!std::isfinite(d.location) || !(d.scale > 0.0) || !(d.dof > 0.0)) {
    throw std::invalid_argument("StudentT: require scale > 0 and dof > 0");
  }
}

void check(const Uniform& d) {
  if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
    throw std::invalid_argument("Uniform: require finite lo < hi");
  }
}

void check(const LogNormal& d) {
  if (!std::isfinite(d.log_mean) || !(d.log_sd > 0.0)) {
    throw std::invalid_argument("LogNormal: require log_sd > 0");
  }
}

void check(const NormalMixture& d) {
  if (!(d.contamination >= 0.0 && d.contamination <= 1.0)) {
    throw std::invalid_argument("NormalMixture: contamination must lie in [0,1]");
  }
  check(d.primary);
  check(d.contaminant);
}

double pdf_impl(const Normal& d, double x) {
  const double sd = std::sqrt(d.variance);
  return normal_pdf((x - d.mean) / sd) / sd;
}

double pdf_impl(const StudentT& d, double x) {
  const double z = (x - d.location) / d.scale;
  const double nu = d.dof;
  const double lognorm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                         0.5 * std::log(nu * M_PI) - std::log(d.scale);
  return std::exp(lognorm - 0.5 * (nu + 1.0) * std::log1p(z * z / nu));
}

double pdf_impl(const Uniform& d, double x) {
  return (x > d.lo && x < d.hi) ? 1.0 / (d.hi - d.lo) : 0.0;
}

double pdf_impl(const LogNormal& d, double x) {
  if (x <= 0.0) return 0.0;
  const double z = (std::log(x) - d.log_mean) / d.log_sd;
  return normal_pdf(z) / (x * d.log_sd);
}

double pdf_impl(const NormalMixture& d, double x) {
  return (1.0 - d.contamination) * pdf_impl(d.primary, x) +
         d.contamination * pdf_impl(d.contaminant, x);
}

double cdf_impl(const Normal& d, double x) {
  return normal_cdf((x - d.mean) / std::sqrt(d.variance));
}

double cdf_impl(const StudentT& d, double x) {
  const double z = (x - d.location) / d.scale;
  if (z == 0.0) return 0.5;
  const double nu = d.dof;
  const double p = 0.5 * regularized_beta(0.5 * nu, 0.5, nu / (nu + z * z));
  return z > 0.0 ? 1.0 - p : p;
}

double cdf_impl(const Uniform& d, double x) {
  if (x <= d.lo) return 0.0;
  if (x >= d.hi) return 1.0;
  return (x - d.lo) / (d.hi - d.lo);
}

double cdf_impl(const LogNormal& d, double x) {
  if (x <= 0.0) return 0.0;
  return normal_cdf((std::log(x) - d.log_mean) / d.log_sd);
}

double cdf_impl(const NormalMixture& d, double x) {
  return (1.0 - d.contamination) * cdf_impl(d.primary, x) +
         d.contamination * cdf_impl(d.contaminant, x);
}

double quantile_impl(const Normal& d, double p) {
  return d.mean + std::sqrt(d.variance) * normal_quantile(p);
}

double quantile_impl(const StudentT& d, double p) {
  if (p == 0.5) return d.location;
  const double nu = d.dof;
  double t;
  if (nu == 1.0) {
    t = std::tan(M_PI * (std::min(p, 1.0 - p) - 0.5));  // negative
    t = -t;
  } else if (nu == 2.0) {
    const double pp = std::min(p, 1.0 - p);
    t = (1.0 - 2.0 * pp) / std::sqrt(2.0 * pp * (1.0 - pp));
  } else {
    const double pp = 2.0 * std::min(p, 1.0 - p);
    const double z = inverse_regularized_beta(0.5 * nu, 0.5, pp);
    t = std::sqrt(nu * (1.0 - z) / z);
    // Two Newton polish steps on the cdf restore full double accuracy.
    StudentT std_t{0.0, 1.0, nu};
    for (int i = 0; i < 2; ++i) {
      const double err = cdf_impl(std_t, t) - (1.0 - 0.5 * pp);
      const double dens = pdf_impl(std_t, t);
      if (dens <= 0.0) break;
      t -= err / dens;
    }
  }
  return p < 0.5 ? d.location - d.scale * t : d.location + d.scale * t;
}

double quantile_impl(const Uniform& d, double p) { return d.lo + p * (d.hi - d.lo); }

double quantile_impl(const LogNormal& d, double p) {
  return std::exp(d.log_mean + d.log_sd * normal_quantile(p));
}

double quantile_impl(const NormalMixture& d, double p) {
  // Bisection on the cdf; the mixture cdf is continuous and strictly
  // increasing, so the root is unique.
  const double qa = quantile_impl(d.primary, p);
  const double qb = quantile_impl(d.contaminant, p);
  double lo = std::min(qa, qb);
  double hi = std::max(qa, qb);
  while (cdf_impl(d, lo) > p) lo -= (hi - lo) + 1.0;
  while (cdf_impl(d, hi) < p) hi += (hi - lo) + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf_impl(d, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double pdf(const ScalarDistribution& dist, double x) {
  return std::visit(
      [x](const auto& d) {
        check(d);
        return pdf_impl(d, x);
      },
      dist);
}

double cdf(const ScalarDistribution& dist, double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) throw std::invalid_argument("cdf: x must not be NaN");
    return x > 0.0 ? 1.0 : 0.0;
  }
  return std::visit(
      [x](const auto& d) {
        check(d);
        return cdf_impl(d, x);
      },
      dist);
}

double quantile(const ScalarDistribution& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile: p must lie strictly inside (0,1)");
  }
  return std::visit(
      [p](const auto& d) {
        check(d);
        return quantile_impl(d, p);
      },
      dist);
}

double sample(const ScalarDistribution& dist, RngStream& rng) {
  return quantile(dist, rng.uniform());
}

std::pair<double, double> support(const ScalarDistribution& dist) {
  struct Visitor {
    std::pair<double, double> operator()(const Normal&) const { return {-kInf, kInf}; }
    std::pair<double, double> operator()(const StudentT&) const { return {-kInf, kInf}; }
    std::pair<double, double> operator()(const Uniform& d) const { return {d.lo, d.hi}; }
    std::pair<double, double> operator()(const LogNormal&) const { return {0.0, kInf}; }
    std::pair<double, double> operator()(const NormalMixture&) const { return {-kInf, kInf}; }
  };
  return std::visit(Visitor{}, dist);
}

ParamPoint sample(const GaussianVector& g, RngStream& rng) {
  const Eigen::Index d = g.mean.size();
  if (g.covariance.rows() != d || g.covariance.cols() != d) {
    throw std::invalid_argument("GaussianVector: covariance shape must match mean");
  }
  if ((g.covariance - g.covariance.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * (1.0 + g.covariance.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("GaussianVector: covariance must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g.covariance);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("GaussianVector: covariance not positive definite");
  }
  Eigen::VectorXd z(d);
  for (Eigen::Index i = 0; i < d; ++i) z[i] = rng.normal();
  return g.mean + llt.matrixL() * z;
}

}  // namespace caliblab
