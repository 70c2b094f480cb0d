#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bessel_br/paths.hpp"

namespace bessel_br::rescale {

using paths::SamplePath;
using paths::TimeGrid;
using numerics::StreamKey;

enum class ConstantsKind { bessel, scalar, generic, gaussian };

std::string_view to_string(ConstantsKind kind);

/// Tail shape P(Y > u) ~ K u^beta exp(-c u).
struct TailShape {
  double K;
  double c;
  double beta;
};

/// Affine norming (a_n, b_n) so that n P(Y > a_n s + b_n) -> exp(-s).
struct NormingConstants {
  double a;
  double b;
  ConstantsKind kind;
  double n;
  std::optional<int> m;             // bessel, scalar
  std::optional<TailShape> shape;   // generic
};

/// Squared Bessel process of dimension m:
/// a = 2, b = 2 ln n + (m - 2) ln ln n - 2 ln Gamma(m/2). Requires n >= 2.
NormingConstants bessel_constants(double n, int m);

/// Brownian scalar-product process of dimension m:
/// a = 1, b = ln n + (m/2 - 1) ln ln n - (m/2) ln 2 - ln Gamma(m/2). Requires n >= 2.
///
/// The ln 2 coefficient is m/2: the sum of m normal products has tail
/// x^{m/2-1} e^{-x} / (2^{m/2} Gamma(m/2)), and this is the b that makes
/// n P(Y > b + s) -> e^{-s}. With (m/2 - 1) ln 2 the maxima would converge to
/// a Gumbel law shifted by -ln 2 instead.
NormingConstants scalar_constants(double n, int m);

/// Constants for a tail K u^beta e^{-c u}:
/// a = 1/c, b = (ln n + beta ln(ln(n) / c) + ln K) / c. Requires K, c > 0, n >= 2.
NormingConstants generic_constants(double K, double c, double beta, double n);

/// Classical constants for maxima of n standard normals:
/// a = 1/sqrt(2 ln n), b = sqrt(2 ln n) - (ln ln n + ln 4 pi) / (2 sqrt(2 ln n)).
NormingConstants gaussian_constants(double n);

/// Physical times 1 + t_j / b of the squared Bessel local process.
std::vector<double> local_bessel_times(std::span<const double> rescaled, double b);
/// Physical times 1 + t_j / (2 b) of the scalar-product local process.
std::vector<double> local_scalar_times(std::span<const double> rescaled, double b);

/// out[j] = (xi(tau_j) - b tau_j) / 2 with tau = local_bessel_times(t, b).
void local_bessel_into(std::span<const double> rescaled, double b, int m, const StreamKey& key,
                       std::span<double> out);
/// out[j] = gamma(tau_j) - b tau_j with tau = local_scalar_times(t, b).
void local_scalar_into(std::span<const double> rescaled, double b, int m, const StreamKey& key,
                       std::span<double> out);

/// xi_{i,n}(t) = (xi(1 + t/b_n) - b_n (1 + t/b_n)) / 2 on the rescaled clock t.
SamplePath sample_local_bessel(const TimeGrid& grid, double n, int m, const StreamKey& key);
/// gamma_{i,n}(t) = gamma(1 + t/(2 b_n)) - b_n (1 + t/(2 b_n)).
SamplePath sample_local_scalar(const TimeGrid& grid, double n, int m, const StreamKey& key);

/// The local Bessel process rebuilt as X + R(t) - t/2 + delta(t) from
/// independent pieces: B_j(1) on key.offset(j), B*_j on key.offset(m + j).
///   X = (sum B_j(1)^2 - b) / 2,  R = sum B_j(1) B*_j(t) / sqrt(b),
///   delta = sum B*_j(t)^2 / (2 b).
/// Equal in law to sample_local_bessel; used as an independent cross-check.
SamplePath sample_local_bessel_decomposed(const TimeGrid& grid, double n, int m,
                                          const StreamKey& key);
/// Scalar-product counterpart; pieces B, Btilde, B*, Btilde* on offsets j, m+j, 2m+j, 3m+j.
SamplePath sample_local_scalar_decomposed(const TimeGrid& grid, double n, int m,
                                          const StreamKey& key);

/// Pointwise maximum; UsageError on empty input or mismatched grids.
SamplePath max_process(std::span<const SamplePath> paths);

}  // namespace bessel_br::rescale
