#pragma once

#include <stdexcept>

#include "caliblab/core/model.hpp"

namespace caliblab {

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Log posterior (up to a constant), its gradient and second derivative for
// a Normal(m0, v0) belief over a location parameter with iid Student-t
// observations of unit scale: y_i | theta ~ T(theta, 1, dof).
double student_t_log_posterior(const Normal& belief, double dof, const Dataset& y,
                               double theta);
double student_t_log_posterior_gradient(const Normal& belief, double dof, const Dataset& y,
                                        double theta);
double student_t_log_posterior_hessian(const Normal& belief, double dof, const Dataset& y,
                                       double theta);

// Gaussian (Laplace) approximation at a maximum of the log posterior:
// Normal(theta_hat, -1/H(theta_hat)).  Damped Newton with backtracking,
// started from the conjugate Gaussian-likelihood mean; on failure to drive
// |gradient| below 1e-10 within 200 iterations the search restarts from
// the data median, and failing that throws ConvergenceFailure (the log
// posterior may be multimodal for small dof).
Normal laplace_student_t(const Normal& belief, double dof, const Dataset& y);

}  // namespace caliblab
