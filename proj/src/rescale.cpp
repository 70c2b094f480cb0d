#include "bessel_br/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bessel_br/errors.hpp"
#include "bessel_br/special.hpp"

namespace bessel_br::rescale {

using numerics::ln_gamma;
using numerics::RandomStream;

namespace {

void check_n(double n) {
  // ln ln n must be finite, which rules out n = 1.
  if (!(n >= 2.0) || !std::isfinite(n)) throw DomainError("norming constants need n >= 2");
}

void check_m(int m) {
  if (m < 1) throw DomainError("process dimension m must be >= 1");
}

}  // namespace

std::string_view to_string(ConstantsKind kind) {
  switch (kind) {
    case ConstantsKind::bessel: return "bessel";
    case ConstantsKind::scalar: return "scalar";
    case ConstantsKind::generic: return "generic";
    case ConstantsKind::gaussian: return "gaussian";
  }
  return "unknown";
}

NormingConstants bessel_constants(double n, int m) {
  check_n(n);
  check_m(m);
  const double ln_n = std::log(n);
  const double b = 2.0 * ln_n + (m - 2) * std::log(ln_n) - 2.0 * ln_gamma(0.5 * m);
  return {2.0, b, ConstantsKind::bessel, n, m, std::nullopt};
}

NormingConstants scalar_constants(double n, int m) {
  check_n(n);
  check_m(m);
  const double ln_n = std::log(n);
  const double half_m = 0.5 * m;
  const double b = ln_n + (half_m - 1.0) * std::log(ln_n) - half_m * std::numbers::ln2 -
                   ln_gamma(half_m);
  return {1.0, b, ConstantsKind::scalar, n, m, std::nullopt};
}

NormingConstants generic_constants(double K, double c, double beta, double n) {
  if (!(K > 0.0)) throw DomainError("generic_constants: K must be > 0");
  if (!(c > 0.0)) throw DomainError("generic_constants: c must be > 0");
  check_n(n);
  const double ln_n = std::log(n);
  const double b = (ln_n + beta * std::log(ln_n / c) + std::log(K)) / c;
  return {1.0 / c, b, ConstantsKind::generic, n, std::nullopt, TailShape{K, c, beta}};
}

NormingConstants gaussian_constants(double n) {
  check_n(n);
  const double ln_n = std::log(n);
  const double root = std::sqrt(2.0 * ln_n);
  const double b = root - (std::log(ln_n) + std::log(4.0 * std::numbers::pi)) / (2.0 * root);
  return {1.0 / root, b, ConstantsKind::gaussian, n, std::nullopt, std::nullopt};
}

std::vector<double> local_bessel_times(std::span<const double> rescaled, double b) {
  std::vector<double> tau(rescaled.size());
  for (std::size_t j = 0; j < tau.size(); ++j) tau[j] = 1.0 + rescaled[j] / b;
  return tau;
}

std::vector<double> local_scalar_times(std::span<const double> rescaled, double b) {
  std::vector<double> tau(rescaled.size());
  for (std::size_t j = 0; j < tau.size(); ++j) tau[j] = 1.0 + rescaled[j] / (2.0 * b);
  return tau;
}

void local_bessel_into(std::span<const double> rescaled, double b, int m, const StreamKey& key,
                       std::span<double> out) {
  const auto tau = local_bessel_times(rescaled, b);
  paths::squared_bessel_at_times(tau, m, key, out);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (out[j] - b * tau[j]);
}

void local_scalar_into(std::span<const double> rescaled, double b, int m, const StreamKey& key,
                       std::span<double> out) {
  const auto tau = local_scalar_times(rescaled, b);
  paths::scalar_product_at_times(tau, m, key, out);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= b * tau[j];
}

SamplePath sample_local_bessel(const TimeGrid& grid, double n, int m, const StreamKey& key) {
  const double b = bessel_constants(n, m).b;
  if (!(b > 0.0)) throw DomainError("local Bessel process needs b_n > 0");
  std::vector<double> values(grid.size());
  local_bessel_into(grid.points(), b, m, key, values);
  return SamplePath(grid, std::move(values));
}

SamplePath sample_local_scalar(const TimeGrid& grid, double n, int m, const StreamKey& key) {
  const double b = scalar_constants(n, m).b;
  if (!(b > 0.0)) throw DomainError("local scalar-product process needs b_n > 0");
  std::vector<double> values(grid.size());
  local_scalar_into(grid.points(), b, m, key, values);
  return SamplePath(grid, std::move(values));
}

SamplePath sample_local_bessel_decomposed(const TimeGrid& grid, double n, int m,
                                          const StreamKey& key) {
  const double b = bessel_constants(n, m).b;
  if (!(b > 0.0)) throw DomainError("local Bessel process needs b_n > 0");
  const auto t = grid.points();
  std::vector<double> at_one(m);
  for (int j = 0; j < m; ++j) at_one[j] = RandomStream(key.offset(j)).normal();

  double x = -b;
  for (double v : at_one) x += v * v;
  x *= 0.5;

  std::vector<double> r(t.size(), 0.0);
  std::vector<double> delta(t.size(), 0.0);
  std::vector<double> bstar(t.size());
  for (int j = 0; j < m; ++j) {
    RandomStream stream(key.offset(static_cast<std::uint64_t>(m + j)));
    paths::brownian_at_times(t, stream, bstar);
    for (std::size_t i = 0; i < t.size(); ++i) {
      r[i] += at_one[j] * bstar[i];
      delta[i] += bstar[i] * bstar[i];
    }
  }
  std::vector<double> values(t.size());
  const double root_b = std::sqrt(b);
  for (std::size_t i = 0; i < t.size(); ++i)
    values[i] = x + r[i] / root_b - 0.5 * t[i] + delta[i] / (2.0 * b);
  return SamplePath(grid, std::move(values));
}

SamplePath sample_local_scalar_decomposed(const TimeGrid& grid, double n, int m,
                                          const StreamKey& key) {
  const double b = scalar_constants(n, m).b;
  if (!(b > 0.0)) throw DomainError("local scalar-product process needs b_n > 0");
  const auto t = grid.points();
  std::vector<double> first(m);
  std::vector<double> second(m);
  for (int j = 0; j < m; ++j) {
    first[j] = RandomStream(key.offset(j)).normal();
    second[j] = RandomStream(key.offset(static_cast<std::uint64_t>(m + j))).normal();
  }
  double x = -b;
  for (int j = 0; j < m; ++j) x += first[j] * second[j];

  std::vector<double> r(t.size(), 0.0);
  std::vector<double> delta(t.size(), 0.0);
  std::vector<double> bstar(t.size());
  std::vector<double> btilde_star(t.size());
  for (int j = 0; j < m; ++j) {
    RandomStream s1(key.offset(static_cast<std::uint64_t>(2 * m + j)));
    RandomStream s2(key.offset(static_cast<std::uint64_t>(3 * m + j)));
    paths::brownian_at_times(t, s1, bstar);
    paths::brownian_at_times(t, s2, btilde_star);
    for (std::size_t i = 0; i < t.size(); ++i) {
      r[i] += first[j] * btilde_star[i] + second[j] * bstar[i];
      delta[i] += bstar[i] * btilde_star[i];
    }
  }
  std::vector<double> values(t.size());
  const double scale = 1.0 / std::sqrt(2.0 * b);
  for (std::size_t i = 0; i < t.size(); ++i)
    values[i] = x + scale * r[i] - 0.5 * t[i] + delta[i] / (2.0 * b);
  return SamplePath(grid, std::move(values));
}

SamplePath max_process(std::span<const SamplePath> paths) {
  if (paths.empty()) throw UsageError("max_process needs at least one path");
  const TimeGrid& grid = paths.front().grid();
  std::vector<double> values(paths.front().values().begin(), paths.front().values().end());
  for (const auto& p : paths.subspan(1)) {
    if (!(p.grid() == grid)) throw UsageError("max_process: paths live on different grids");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::max(values[i], p[i]);
  }
  return SamplePath(grid, std::move(values));
}

}  // namespace bessel_br::rescale
