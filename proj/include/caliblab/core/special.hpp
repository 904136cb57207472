#pragma once

namespace caliblab {

// Standard normal cdf and its inverse.  The quantile uses a rational
// approximation refined by a Halley step; absolute error is well below
// the 1e-10 target across (0,1).
double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double p);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta function I_x(a,b) and its inverse in x.
double regularized_beta(double a, double b, double x);
double inverse_regularized_beta(double a, double b, double p);

// Chi-squared cdf with k degrees of freedom.
double chi_squared_cdf(double k, double x);

}  // namespace caliblab
