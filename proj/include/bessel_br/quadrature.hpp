#pragma once

#include <functional>
#include <limits>

namespace bessel_br::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  /// Throws UsageError unless abs_tol > 0, rel_tol > 0, max_subdivisions >= 1.
  void validate() const;
};

/// Globally adaptive Gauss-Kronrod (10/21-point) integration on (lo, hi).
///
/// `hi` may be +infinity; the half line is mapped onto (0, 1) via
/// y = lo + u / (1 - u). The result meets max(abs_tol, rel_tol * |value|)
/// or a ConvergenceError is thrown with the last estimate and error bound.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

struct QuadratureResult {
  double value;
  double error;
  int subdivisions;
};

/// Same as integrate(), also reporting the final error estimate.
QuadratureResult integrate_with_error(const std::function<double(double)>& f, double lo,
                                      double hi, const QuadratureSpec& spec = {});

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace bessel_br::numerics
