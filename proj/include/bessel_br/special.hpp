#pragma once

// Special functions used by the norming constants and the exact tails.
// Thin domain-checked wrappers over Boost.Math.

namespace bessel_br::numerics {

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double reg_gamma_lower(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Keeps full relative accuracy deep in the upper tail.
double reg_gamma_upper(double a, double x);

/// Gamma(a, 1) density at x.
double gamma_pdf(double a, double x);

/// Inverse of Q(a, .): the x with Q(a, x) = q, for q in (0, 1).
double reg_gamma_upper_inverse(double a, double q);

double std_normal_pdf(double x);
double std_normal_cdf(double x);
/// 1 - Phi(x), evaluated without cancellation for large x.
double std_normal_tail(double x);
/// Phi^{-1}(p) for p in (0, 1).
double std_normal_quantile(double p);
/// The x with 1 - Phi(x) = q; keeps precision for tiny q.
double std_normal_upper_quantile(double q);

}  // namespace bessel_br::numerics
