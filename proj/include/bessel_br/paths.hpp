#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "bessel_br/rng.hpp"

namespace bessel_br::paths {

using numerics::RandomStream;
using numerics::StreamKey;

/// Strictly increasing evaluation times 0 = t_0 < ... < t_k = 1.
///
/// Copies share the underlying storage, so a SamplePath can carry its grid
/// by value.
class TimeGrid {
 public:
  /// Throws UsageError unless there are >= 2 finite, strictly increasing
  /// points starting at 0 and ending at 1.
  explicit TimeGrid(std::vector<double> points);

  std::span<const double> points() const { return *points_; }
  std::size_t size() const { return points_->size(); }
  double operator[](std::size_t i) const { return (*points_)[i]; }
  /// Index of the grid point equal to t; throws UsageError if t is not on the grid.
  std::size_t index_of(double t) const;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b);

 private:
  std::shared_ptr<const std::vector<double>> points_;
};

/// One real value per grid point.
class SamplePath {
 public:
  /// Throws UsageError on a length mismatch or a non-finite value.
  SamplePath(TimeGrid grid, std::vector<double> values);

  const TimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  /// Value at grid time t (must be a grid point).
  double at(double t) const { return values_[grid_.index_of(t)]; }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

inline constexpr int kDefaultGridExponent = 8;
inline constexpr int kMaxGridExponent = 24;

/// 2^k + 1 uniform points on [0, 1]; ResourceError for k > 24.
TimeGrid make_dyadic_grid(int k);

/// Brownian motion observed at nondecreasing times >= 0, started from B(0) = 0.
/// Increments are exact Gaussians; out[j] = B(times[j]).
void brownian_at_times(std::span<const double> times, RandomStream& stream,
                       std::span<double> out);

/// out[j] = sum of m squared independent Brownian motions at times[j].
/// Coordinate j draws from key.offset(j).
void squared_bessel_at_times(std::span<const double> times, int m, const StreamKey& key,
                             std::span<double> out);

/// out[j] = sum_j B_j(t) * Btilde_j(t); B_j uses key.offset(j), Btilde_j key.offset(j + m).
void scalar_product_at_times(std::span<const double> times, int m, const StreamKey& key,
                             std::span<double> out);

SamplePath sample_bm(const TimeGrid& grid, const StreamKey& key);
SamplePath sample_squared_bessel(const TimeGrid& grid, int m, const StreamKey& key);
SamplePath sample_scalar_product(const TimeGrid& grid, int m, const StreamKey& key);

}  // namespace bessel_br::paths
