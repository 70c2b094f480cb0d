#include "bessel_br/tails.hpp"

#include <cmath>
#include <numbers>

#include "bessel_br/errors.hpp"
#include "bessel_br/special.hpp"

namespace bessel_br::tails {

using numerics::ln_gamma;

namespace {

void check_m(int m) {
  if (m < 1) throw DomainError("dimension m must be >= 1");
}

double exponent_a(const TailParams& q) {
  return std::pow((q.p1 * q.L1) / (q.p2 * q.L2), 1.0 / (q.p1 + q.p2));
}

}  // namespace

void TailParams::validate() const {
  if (!(C1 > 0 && C2 > 0 && L1 > 0 && L2 > 0 && p1 > 0 && p2 > 0))
    throw DomainError("TailParams: C_i, L_i, p_i must be positive");
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2))
    throw DomainError("TailParams: alpha_i must be finite");
}

double chi_square_tail(int m, double x) {
  check_m(m);
  if (!(x >= 0.0)) throw DomainError("chi_square_tail: x must be >= 0");
  return numerics::reg_gamma_upper(0.5 * m, 0.5 * x);
}

double chi_square_density(int m, double x) {
  check_m(m);
  if (!(x >= 0.0)) throw DomainError("chi_square_density: x must be >= 0");
  return 0.5 * numerics::gamma_pdf(0.5 * m, 0.5 * x);
}

double chi_square_tail_asymptotic(int m, double x) {
  check_m(m);
  if (!(x > 0.0)) throw DomainError("chi_square_tail_asymptotic: x must be > 0");
  const double h = 0.5 * m;
  return std::exp((h - 1.0) * std::log(x) - 0.5 * x - (h - 1.0) * std::numbers::ln2 -
                  ln_gamma(h));
}

double scalar_product_tail_asymptotic(int m, double x) {
  check_m(m);
  if (!(x > 0.0)) throw DomainError("scalar_product_tail_asymptotic: x must be > 0");
  const double h = 0.5 * m;
  return std::exp((h - 1.0) * std::log(x) - x - h * std::numbers::ln2 - ln_gamma(h));
}

TailShape chi_square_tail_shape(int m) {
  check_m(m);
  const double h = 0.5 * m;
  return {std::exp(-(h - 1.0) * std::numbers::ln2 - ln_gamma(h)), 0.5, h - 1.0};
}

TailShape scalar_product_tail_shape(int m) {
  check_m(m);
  const double h = 0.5 * m;
  return {std::exp(-h * std::numbers::ln2 - ln_gamma(h)), 1.0, h - 1.0};
}

double laplace_tail(double x) { return x >= 0.0 ? 0.5 * std::exp(-x) : 1.0 - 0.5 * std::exp(x); }

double weibull_product_tail(const TailParams& q, double x) {
  q.validate();
  if (!(x > 0.0)) throw DomainError("weibull_product_tail: x must be > 0");
  const double sum_p = q.p1 + q.p2;
  const double a = exponent_a(q);
  const double prefactor = std::sqrt(2.0 * std::numbers::pi * q.p2 * q.L2 / sum_p) * q.C1 * q.C2 *
                           std::pow(a, 0.5 * q.p2 + q.alpha2 - q.alpha1);
  const double power =
      (2.0 * q.p2 * q.alpha1 + 2.0 * q.p1 * q.alpha2 + q.p1 * q.p2) / (2.0 * sum_p);
  const double rate = q.L1 * std::pow(a, -q.p1) + q.L2 * std::pow(a, q.p2);
  return prefactor * std::pow(x, power) * std::exp(-rate * std::pow(x, q.p1 * q.p2 / sum_p));
}

double weibull_product_density(const TailParams& q, double x) {
  const double tail = weibull_product_tail(q, x);
  const double a = exponent_a(q);
  return q.L1 * q.p1 * std::pow(a, -q.p1) * std::pow(x, q.p1 * q.p2 / (q.p1 + q.p2) - 1.0) * tail;
}

double product_tail_oracle(int m, double x, const QuadratureSpec& spec) {
  check_m(m);
  if (!(x > 0.0)) throw DomainError("product_tail_oracle: x must be > 0");
  auto integrand = [m, x](double s) {
    if (s <= 0.0) return 0.0;
    return numerics::std_normal_tail(x / std::sqrt(s)) * chi_square_density(m, s);
  };
  return numerics::integrate(integrand, 0.0, numerics::kInfinity, spec);
}

double product_density_oracle(int m, double x, const QuadratureSpec& spec) {
  check_m(m);
  if (!(x > 0.0)) throw DomainError("product_density_oracle: x must be > 0");
  auto integrand = [m, x](double s) {
    if (s <= 0.0) return 0.0;
    const double root = std::sqrt(s);
    return numerics::std_normal_pdf(x / root) / root * chi_square_density(m, s);
  };
  return numerics::integrate(integrand, 0.0, numerics::kInfinity, spec);
}

NormingConstants constants_at(const NormingConstants& consts, double n) {
  switch (consts.kind) {
    case rescale::ConstantsKind::bessel: return rescale::bessel_constants(n, consts.m.value());
    case rescale::ConstantsKind::scalar: return rescale::scalar_constants(n, consts.m.value());
    case rescale::ConstantsKind::generic: {
      const auto& s = consts.shape.value();
      return rescale::generic_constants(s.K, s.c, s.beta, n);
    }
    case rescale::ConstantsKind::gaussian: return rescale::gaussian_constants(n);
  }
  throw UsageError("unknown constants kind");
}

std::vector<double> check_gumbel_intensity(const TailFunction& tail,
                                           const NormingConstants& consts, double s,
                                           std::span<const double> ns) {
  std::vector<double> out;
  out.reserve(ns.size());
  for (double n : ns) {
    const auto c = constants_at(consts, n);
    out.push_back(n * tail.survival(c.a * s + c.b));
  }
  return out;
}

std::vector<double> check_condition_kk(const std::function<double(double)>& tail_density,
                                       const NormingConstants& consts, double r, double p,
                                       std::span<const double> ns, const QuadratureSpec& spec) {
  if (!(r > 0.0) || !(p > 0.0)) throw DomainError("check_condition_kk: r and p must be > 0");
  std::vector<double> out;
  out.reserve(ns.size());
  for (double n : ns) {
    const auto c = constants_at(consts, n);
    const double x_lo = -c.b / (2.0 * c.a);
    const double x_hi = -r;
    if (!(x_hi > x_lo)) {
      out.push_back(0.0);
      continue;
    }
    // dP(X <= x) = a h(a x + b) dx; integrate on the Y scale y = a x + b.
    auto integrand = [&](double y) {
      const double x = (y - c.b) / c.a;
      return std::exp(-x * x / p) * tail_density(y);
    };
    const double y_lo = c.a * x_lo + c.b;
    const double y_hi = c.a * x_hi + c.b;
    out.push_back(n * numerics::integrate(integrand, y_lo, y_hi, spec));
  }
  return out;
}

}  // namespace bessel_br::tails
