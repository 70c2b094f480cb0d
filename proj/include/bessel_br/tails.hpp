#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bessel_br/quadrature.hpp"
#include "bessel_br/rescale.hpp"

namespace bessel_br::tails {

using numerics::QuadratureSpec;
using rescale::NormingConstants;
using rescale::TailShape;

/// Constants of two independent positive factors with
/// P(X_i > x) ~ C_i x^{alpha_i} exp(-L_i x^{p_i}).
struct TailParams {
  double C1, C2;
  double L1, L2;
  double p1, p2;
  double alpha1, alpha2;

  void validate() const;
  /// The same law with the two factors exchanged.
  TailParams swapped() const { return {C2, C1, L2, L1, p2, p1, alpha2, alpha1}; }
};

/// A survival function P(Y > u) with a label.
struct TailFunction {
  std::function<double(double)> survival;
  std::string name;
  double support_hint = 0.0;  // asymptotic regime starts beyond this
};

/// Exact P(chi2_m > x) = Q(m/2, x/2).
double chi_square_tail(int m, double x);
/// chi2_m density g_m(x).
double chi_square_density(int m, double x);
/// x^{m/2-1} e^{-x/2} / (2^{m/2-1} Gamma(m/2)), i.e. 2 g_m(x).
double chi_square_tail_asymptotic(int m, double x);
/// f_m(x) = x^{m/2-1} e^{-x} / (2^{m/2} Gamma(m/2)).
double scalar_product_tail_asymptotic(int m, double x);

/// (K, c, beta) of the chi-square tail: 1/(2^{m/2-1} Gamma(m/2)), 1/2, m/2 - 1.
TailShape chi_square_tail_shape(int m);
/// (K, c, beta) of the scalar-product tail: 1/(2^{m/2} Gamma(m/2)), 1, m/2 - 1.
TailShape scalar_product_tail_shape(int m);

/// Exact standard Laplace tail e^{-x}/2 for x >= 0 (the m = 2 scalar product).
double laplace_tail(double x);

/// Asymptotic P(X_1 X_2 > x) for Weibull-type factors, with
/// A = [(p1 L1)/(p2 L2)]^{1/(p1+p2)}:
///   sqrt(2 pi p2 L2 / (p1 + p2)) C1 C2 A^{p2/2 + alpha2 - alpha1}
///   * x^{(2 p2 alpha1 + 2 p1 alpha2 + p1 p2) / (2 (p1 + p2))}
///   * exp(-(L1 A^{-p1} + L2 A^{p2}) x^{p1 p2 / (p1 + p2)}).
double weibull_product_tail(const TailParams& params, double x);

/// Density asymptotic L1 p1 A^{-p1} x^{p1 p2/(p1+p2) - 1} P(X_1 X_2 > x).
double weibull_product_density(const TailParams& params, double x);

/// P(sum_{i<=m} X_i Y_i > x) for x > 0, by certified quadrature of
///   int_0^inf Phibar(x / sqrt(s)) g_m(s) ds,
/// which is P(X_1 sqrt(chi2_m) > x), equal to (1/2) P(|X_1| sqrt(chi2_m) > x).
double product_tail_oracle(int m, double x, const QuadratureSpec& spec = {});

/// Density of sum_{i<=m} X_i Y_i at x > 0, by quadrature of
///   int_0^inf phi(x / sqrt(s)) / sqrt(s) g_m(s) ds.
double product_density_oracle(int m, double x, const QuadratureSpec& spec = {});

/// n * tail(a_n s + b_n) for each n in ns, with (a_n, b_n) recomputed per n
/// from the kind and source parameters recorded in `consts`.
std::vector<double> check_gumbel_intensity(const TailFunction& tail,
                                           const NormingConstants& consts, double s,
                                           std::span<const double> ns);

/// For each n: n * int_{-b_n/(2 a_n)}^{-r} exp(-x^2/p) dP(X_{1,n} <= x) with
/// X_{1,n} = (Y - b_n)/a_n, evaluated on the Y scale against `tail_density`.
/// An empty window (r >= b_n/(2 a_n)) contributes 0.
std::vector<double> check_condition_kk(const std::function<double(double)>& tail_density,
                                       const NormingConstants& consts, double r, double p,
                                       std::span<const double> ns,
                                       const QuadratureSpec& spec = {});

/// Rebuilds (a_n, b_n) of the same family as `consts` at a new sample size n.
NormingConstants constants_at(const NormingConstants& consts, double n);

}  // namespace bessel_br::tails
