#include "caliblab/testfn/test_functions.hpp"

#include <cmath>

#include "caliblab/core/special.hpp"

namespace caliblab {

namespace {

Eigen::Index checked_index(Eigen::Index i, Eigen::Index dim, const char* what) {
  if (i < 0 || i >= dim) throw std::out_of_range(what);
  return i;
}

}  // namespace

double evaluate(const TestFunction& f, const ParamPoint& theta) {
  struct Visitor {
    const ParamPoint& theta;

    double operator()(const Identity&) const {
      if (theta.size() != 1) {
        throw std::invalid_argument("Identity test function requires a scalar parameter");
      }
      return theta[0];
    }
    double operator()(const Coordinate& c) const {
      return theta[checked_index(c.index, theta.size(), "Coordinate index out of range")];
    }
    double operator()(const SigmoidProduct& s) const {
      if (s.center.size() != theta.size()) {
        throw std::invalid_argument("SigmoidProduct center dimension mismatch");
      }
      if (!(s.sharpness > 0.0)) {
        throw std::invalid_argument("SigmoidProduct sharpness must be positive");
      }
      double value = 1.0;
      for (Eigen::Index i = 0; i < theta.size(); ++i) {
        value /= 1.0 + std::exp(2.0 * s.sharpness * (theta[i] - s.center[i]));
      }
      return value;
    }
    double operator()(const Evaluation& e) const {
      return theta[checked_index(e.grid_index, theta.size(), "Evaluation index out of range")];
    }
  };
  return std::visit(Visitor{theta}, f);
}

double pushforward_cdf(const PosteriorOutput& out, const TestFunction& f, double t) {
  if (const auto* s = std::get_if<ScalarDistribution>(&out)) {
    const bool monotone_scalar =
        std::holds_alternative<Identity>(f) ||
        (std::holds_alternative<Coordinate>(f) && std::get<Coordinate>(f).index == 0) ||
        (std::holds_alternative<Evaluation>(f) && std::get<Evaluation>(f).grid_index == 0);
    if (!monotone_scalar) {
      throw NoClosedFormPushforward(
          "no closed-form pushforward for this test function on scalar output");
    }
    return cdf(*s, t);
  }
  if (const auto* g = std::get_if<GaussianVector>(&out)) {
    Eigen::Index idx;
    if (std::holds_alternative<Identity>(f)) {
      if (g->mean.size() != 1) {
        throw NoClosedFormPushforward("Identity has no closed-form pushforward in d > 1");
      }
      idx = 0;
    } else if (const auto* c = std::get_if<Coordinate>(&f)) {
      idx = checked_index(c->index, g->mean.size(), "Coordinate index out of range");
    } else if (const auto* e = std::get_if<Evaluation>(&f)) {
      idx = checked_index(e->grid_index, g->mean.size(), "Evaluation index out of range");
    } else {
      throw NoClosedFormPushforward(
          "no closed-form pushforward for this test function on Gaussian output");
    }
    const double var = g->covariance(idx, idx);
    if (!(var > 0.0)) {
      throw std::invalid_argument("pushforward_cdf: marginal variance must be positive");
    }
    return normal_cdf((t - g->mean[idx]) / std::sqrt(var));
  }
  throw NoClosedFormPushforward("empirical output has no closed-form pushforward cdf");
}

}  // namespace caliblab
