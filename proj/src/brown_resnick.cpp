#include "bessel_br/brown_resnick.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bessel_br/errors.hpp"
#include "bessel_br/special.hpp"

namespace bessel_br::brown_resnick {

using numerics::RandomStream;
using numerics::std_normal_cdf;

void BRTruncationSpec::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw UsageError("epsilon must lie in (0, 1)");
  if (max_points < 1) throw UsageError("max_points must be >= 1");
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gumbel_quantile: p must lie in (0, 1)");
  return -std::log(-std::log(p));
}

double truncation_level(double epsilon) {
  return numerics::std_normal_upper_quantile(0.5 * epsilon);
}

// Stopping rule.
//
// Points arrive with X_1 > X_2 > ... . Let L = min_j M(t_j) be the lowest
// value of the running maximum over the grid. A point X_k can change some
// grid value only if sup_t (B_k(t) - t/2) > L - X_k. By the reflection
// principle, P(sup_{[0,1]} B > c) = 2 (1 - Phi(c)), and the drift only lowers
// the supremum, so with c = truncation_level(epsilon):
//
//   X_k + c < L  implies  P(point k changes the path) <= epsilon.
//
// Every later point lies further below L (X_{k+j} - X_k ~ -ln((k+j)/k)), so
// its exceedance probability is smaller again and decays like
// Phi-bar(c + ln(1 + j/k)). We stop at the first such k and discard it and
// all later points; L only grows as points are added, so the test is
// monotone and the first firing is final.
SamplePath sample_br(const TimeGrid& grid, const BRTruncationSpec& spec, const StreamKey& key,
                     BRSampleInfo* info) {
  spec.validate();
  const double level = truncation_level(spec.epsilon);
  const auto times = grid.points();
  const std::size_t size = times.size();

  std::vector<double> running(size, -std::numeric_limits<double>::infinity());
  std::vector<double> bm(size);
  RandomStream arrivals(key.offset(0));
  double gamma = 0.0;
  double lowest = -std::numeric_limits<double>::infinity();
  std::size_t used = 0;

  for (std::size_t k = 1;; ++k) {
    gamma += arrivals.exponential();
    const double x = -std::log(gamma);
    if (used > 0 && x + level < lowest) break;
    if (used == spec.max_points) {
      std::vector<double> partial(running);
      throw TruncationError("sample_br: max_points (" + std::to_string(spec.max_points) +
                                ") exhausted before the stopping rule fired",
                            SamplePath(grid, std::move(partial)), used);
    }
    RandomStream stream(key.offset(k));
    paths::brownian_at_times(times, stream, bm);
    lowest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < size; ++j) {
      running[j] = std::max(running[j], x + bm[j] - 0.5 * times[j]);
      lowest = std::min(lowest, running[j]);
    }
    ++used;
  }
  if (info != nullptr) *info = {used, level};
  return SamplePath(grid, std::move(running));
}

HRParams hr_lambda(double s, double t) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
    throw DomainError("hr_lambda: times must lie in [0, 1]");
  return {0.5 * std::sqrt(std::fabs(t - s))};
}

double hr_bivariate_cdf(double x, double y, HRParams p) {
  if (!(p.lambda >= 0.0)) throw DomainError("Hüsler-Reiss lambda must be >= 0");
  if (p.lambda == 0.0) return gumbel_cdf(std::min(x, y));
  if (std::isinf(p.lambda)) return gumbel_cdf(x) * gumbel_cdf(y);
  const double lam = p.lambda;
  const double exponent = std::exp(-x) * std_normal_cdf(lam + (y - x) / (2.0 * lam)) +
                          std::exp(-y) * std_normal_cdf(lam + (x - y) / (2.0 * lam));
  return std::exp(-exponent);
}

double extremal_coefficient(HRParams p) {
  if (!(p.lambda >= 0.0)) throw DomainError("Hüsler-Reiss lambda must be >= 0");
  if (std::isinf(p.lambda)) return 2.0;
  return std::clamp(2.0 * std_normal_cdf(p.lambda), 1.0, 2.0);
}

}  // namespace bessel_br::brown_resnick
