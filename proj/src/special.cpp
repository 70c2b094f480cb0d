#include "bessel_br/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bessel_br/errors.hpp"

namespace bessel_br::numerics {

namespace {

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma: shape must be > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument must be >= 0");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be > 0");
  return boost::math::lgamma(x);
}

double reg_gamma_lower(double a, double x) {
  check_gamma_args(a, x);
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double reg_gamma_upper(double a, double x) {
  check_gamma_args(a, x);
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double gamma_pdf(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return a < 1.0 ? std::numeric_limits<double>::infinity() : (a == 1.0 ? 1.0 : 0.0);
  return boost::math::gamma_p_derivative(a, x);
}

double reg_gamma_upper_inverse(double a, double q) {
  if (!(a > 0.0)) throw DomainError("reg_gamma_upper_inverse: shape must be > 0");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("reg_gamma_upper_inverse: q must lie in (0, 1)");
  return boost::math::gamma_q_inv(a, q);
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("std_normal_quantile: p must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double std_normal_upper_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("std_normal_upper_quantile: q must lie in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

}  // namespace bessel_br::numerics
