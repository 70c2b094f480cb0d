#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>

#include "bessel_br/paths.hpp"

namespace bessel_br::brown_resnick {

using numerics::StreamKey;
using paths::SamplePath;
using paths::TimeGrid;

struct BRTruncationSpec {
  double epsilon = 1e-4;
  std::size_t max_points = 10000;

  void validate() const;
};

/// Hüsler-Reiss dependence parameter; +infinity encodes independence.
struct HRParams {
  double lambda;
};

/// sample_br used up max_points before its stopping rule fired.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, SamplePath partial, std::size_t points_used)
      : std::runtime_error(what), partial_(std::move(partial)), points_used_(points_used) {}

  const SamplePath& partial_path() const noexcept { return partial_; }
  std::size_t points_used() const noexcept { return points_used_; }

 private:
  SamplePath partial_;
  std::size_t points_used_;
};

struct BRSampleInfo {
  std::size_t points_used = 0;
  double stop_level = 0.0;  // c_epsilon
};

/// Standard Gumbel CDF exp(-exp(-x)).
double gumbel_cdf(double x);
/// Inverse of gumbel_cdf on (0, 1).
double gumbel_quantile(double p);

/// Level c with P(sup_{[0,1]} (B(t) - t/2) > c) <= 2 (1 - Phi(c)) = epsilon.
double truncation_level(double epsilon);

/// One path of M(t) = max_k (X_k + B_k(t) - t/2) on `grid`.
///
/// Poisson points X_k = -ln(Gamma_k) come in decreasing order from the
/// arrival times Gamma_k of a unit-rate process (substream key.offset(0));
/// point k's Brownian motion uses key.offset(k). See the implementation for
/// the stopping rule and its error bound.
SamplePath sample_br(const TimeGrid& grid, const BRTruncationSpec& spec, const StreamKey& key,
                     BRSampleInfo* info = nullptr);

/// lambda = sqrt(|t - s|) / 2 for the variogram |t - s| of standard Brownian motion.
HRParams hr_lambda(double s, double t);

/// Bivariate Hüsler-Reiss CDF
///   exp(-e^{-x} Phi(lambda + (y - x)/(2 lambda)) - e^{-y} Phi(lambda + (x - y)/(2 lambda))),
/// with the limits Lambda(min(x, y)) at lambda = 0 and Lambda(x) Lambda(y) at infinity.
double hr_bivariate_cdf(double x, double y, HRParams p);

/// theta = 2 Phi(lambda), so that F(x, x) = Lambda(x)^theta.
double extremal_coefficient(HRParams p);

}  // namespace bessel_br::brown_resnick
