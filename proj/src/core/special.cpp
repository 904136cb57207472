#include "caliblab/core/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace caliblab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

// Abscissas and weights for 18-point Gauss-Legendre quadrature on [0,1],
// used for the incomplete gamma function at large a.
constexpr double kGaulegY[18] = {
    0.0021695375159141994, 0.011413521097787704, 0.027972308950302116,
    0.051727015600492421,  0.082502225484340941, 0.12007019910960293,
    0.16415283300752470,   0.21442376986779355,  0.27051082840644336,
    0.33199876341447887,   0.39843234186401943,  0.46931971407375483,
    0.54413605556657973,   0.62232745288031077,  0.70331500465597174,
    0.78649910768313447,   0.87126389619061517,  0.95698180152629142};
constexpr double kGaulegW[18] = {
    0.0055657196642445571, 0.012915947284065419, 0.020181515297735382,
    0.027298621498568734,  0.034213810770299537, 0.040875750923643261,
    0.047235083490265582,  0.053244713977759692, 0.058860144245324798,
    0.064039797355015485,  0.068745323835736408, 0.072941885005653087,
    0.076598410645870640,  0.079687828912071670, 0.082187266704339706,
    0.084078218979661945,  0.085346685739338721, 0.085983275670394821};

double gamma_p_series(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (;;) {
    ++ap;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * eps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
}

double gamma_q_continued_fraction(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1;; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Quadrature evaluation of P(a,x) for large a; psig selects P vs Q.
double gamma_p_approx(double a, double x, bool psig) {
  const double a1 = a - 1.0;
  const double lna1 = std::log(a1);
  const double sqrta1 = std::sqrt(a1);
  double xu;
  if (x > a1) {
    xu = std::max(a1 + 11.5 * sqrta1, x + 6.0 * sqrta1);
  } else {
    xu = std::max(0.0, std::min(a1 - 7.5 * sqrta1, x - 5.0 * sqrta1));
  }
  double sum = 0.0;
  for (int j = 0; j < 18; ++j) {
    const double t = x + (xu - x) * kGaulegY[j];
    sum += kGaulegW[j] * std::exp(-(t - a1) + a1 * (std::log(t) - lna1));
  }
  const double ans = sum * (xu - x) * std::exp(a1 * (lna1 - 1.0) - std::lgamma(a));
  if (psig) return ans > 0.0 ? 1.0 - ans : -ans;
  return ans >= 0.0 ? ans : 1.0 + ans;
}

double beta_continued_fraction(double a, double b, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return h;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  }
  // Wichura's AS 241 (PPND16) rational approximation; absolute error is
  // around 1e-16, so no iterative refinement is required at double
  // precision.
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return (q < 0.0) ? -x : x;
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_p: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (a >= 100.0) return gamma_p_approx(a, x, true);
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (a >= 100.0) return gamma_p_approx(a, x, false);
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("regularized_beta: need a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double inverse_regularized_beta(double a, double b, double p) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("inverse_regularized_beta: need a, b > 0");
  }
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double eps = 1e-14;
  double x;
  if (a >= 1.0 && b >= 1.0) {
    const double pp = (p < 0.5) ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double xg = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
    if (p < 0.5) xg = -xg;
    const double al = (xg * xg - 3.0) / 6.0;
    const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
    const double w = (xg * std::sqrt(al + h) / h) -
                     (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) *
                         (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
    x = a / (a + b * std::exp(2.0 * w));
  } else {
    const double lna = std::log(a / (a + b));
    const double lnb = std::log(b / (a + b));
    const double t1 = std::exp(a * lna) / a;
    const double t2 = std::exp(b * lnb) / b;
    const double t = t1 + t2;
    if (p < t1 / t) {
      x = std::pow(a * t * p, 1.0 / a);
    } else {
      x = 1.0 - std::pow(b * t * (1.0 - p), 1.0 / b);
    }
  }
  const double afac = -std::lgamma(a) - std::lgamma(b) + std::lgamma(a + b);
  for (int j = 0; j < 12; ++j) {
    if (x <= 0.0 || x >= 1.0) {
      x = std::min(std::max(x, 1e-300), 1.0 - 1e-16);
    }
    const double err = regularized_beta(a, b, x) - p;
    const double dfdx =
        std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) + afac);
    if (dfdx <= 0.0) break;
    const double u = err / dfdx;
    // Halley step.
    double step = u / (1.0 - 0.5 * std::min(1.0, u * ((a - 1.0) / x - (b - 1.0) / (1.0 - x))));
    x -= step;
    if (x <= 0.0) x = 0.5 * (x + step);
    if (x >= 1.0) x = 0.5 * (x + step + 1.0);
    if (std::fabs(step) < eps * x && j > 0) break;
  }
  return x;
}

double chi_squared_cdf(double k, double x) {
  if (!(k > 0.0)) throw std::invalid_argument("chi_squared_cdf: need k > 0");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * k, 0.5 * x);
}

}  // namespace caliblab
