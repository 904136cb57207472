#pragma once

#include <stdexcept>
#include <variant>

#include "caliblab/core/model.hpp"

namespace caliblab {

// Test functions reduce a parameter point to a single real in an interval.
// Identity and Coordinate are strictly monotone and admit closed-form
// pushforward cdfs; SigmoidProduct maps into (0,1) and is used where an
// indicator-like statistic is needed; Evaluation reads a function-valued
// parameter stored as values on a fixed grid.

struct Identity {};

struct Coordinate {
  Eigen::Index index = 0;
};

// x -> prod_i 1 / (1 + exp(2c (x_i - center_i))), strictly decreasing in
// every coordinate and converging pointwise (off a null set) to the
// indicator of the lower-left orthant at `center` as sharpness -> inf.
struct SigmoidProduct {
  Eigen::VectorXd center;
  double sharpness = 1.0;
};

struct Evaluation {
  Eigen::Index grid_index = 0;
};

using TestFunction = std::variant<Identity, Coordinate, SigmoidProduct, Evaluation>;

// Raised when a (distribution, test function) pair has no closed-form
// pushforward cdf; callers fall back to rank statistics.
struct NoClosedFormPushforward : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double evaluate(const TestFunction& f, const ParamPoint& theta);

// Cdf of the univariate pushforward f # out, evaluated at t.  Requires
// analytic output and a monotone test function (Identity, Coordinate or
// Evaluation); anything else throws NoClosedFormPushforward.
double pushforward_cdf(const PosteriorOutput& out, const TestFunction& f, double t);

inline double pushforward_cdf(const Belief& belief, const TestFunction& f, double t) {
  return pushforward_cdf(to_output(belief), f, t);
}

}  // namespace caliblab
