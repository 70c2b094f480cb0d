#include "bessel_br/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bessel_br/errors.hpp"

namespace bessel_br::paths {

namespace {

void check_dimension(int m) {
  if (m < 1) throw DomainError("process dimension m must be >= 1");
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> points) {
  if (points.size() < 2) throw UsageError("TimeGrid needs at least 2 points");
  if (points.front() != 0.0) throw UsageError("TimeGrid must start at 0");
  if (points.back() != 1.0) throw UsageError("TimeGrid must end at 1");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1]) || !std::isfinite(points[i]))
      throw UsageError("TimeGrid points must be finite and strictly increasing");
  }
  points_ = std::make_shared<const std::vector<double>>(std::move(points));
}

std::size_t TimeGrid::index_of(double t) const {
  const auto it = std::lower_bound(points_->begin(), points_->end(), t);
  if (it == points_->end() || *it != t)
    throw UsageError("time " + std::to_string(t) + " is not a grid point");
  return static_cast<std::size_t>(it - points_->begin());
}

bool operator==(const TimeGrid& a, const TimeGrid& b) {
  return a.points_ == b.points_ || *a.points_ == *b.points_;
}

SamplePath::SamplePath(TimeGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw UsageError("SamplePath length differs from its grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw UsageError("SamplePath values must be finite");
}

TimeGrid make_dyadic_grid(int k) {
  if (k < 0) throw UsageError("grid exponent must be >= 0");
  if (k > kMaxGridExponent) throw ResourceError("grid exponent must be <= 24");
  const std::size_t intervals = std::size_t{1} << k;
  std::vector<double> pts(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    pts[i] = static_cast<double>(i) / static_cast<double>(intervals);
  return TimeGrid(std::move(pts));
}

void brownian_at_times(std::span<const double> times, RandomStream& stream,
                       std::span<double> out) {
  double previous = 0.0;
  double value = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double dt = times[j] - previous;
    if (dt > 0.0) value += std::sqrt(dt) * stream.normal();
    out[j] = value;
    previous = times[j];
  }
}

void squared_bessel_at_times(std::span<const double> times, int m, const StreamKey& key,
                             std::span<double> out) {
  check_dimension(m);
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j < m; ++j) {
    RandomStream stream(key.offset(static_cast<std::uint64_t>(j)));
    double previous = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double dt = times[i] - previous;
      if (dt > 0.0) b += std::sqrt(dt) * stream.normal();
      out[i] += b * b;
      previous = times[i];
    }
  }
}

void scalar_product_at_times(std::span<const double> times, int m, const StreamKey& key,
                             std::span<double> out) {
  check_dimension(m);
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 0; j < m; ++j) {
    RandomStream first(key.offset(static_cast<std::uint64_t>(j)));
    RandomStream second(key.offset(static_cast<std::uint64_t>(j + m)));
    double previous = 0.0;
    double b = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double dt = times[i] - previous;
      if (dt > 0.0) {
        const double sd = std::sqrt(dt);
        b += sd * first.normal();
        c += sd * second.normal();
      }
      out[i] += b * c;
      previous = times[i];
    }
  }
}

SamplePath sample_bm(const TimeGrid& grid, const StreamKey& key) {
  std::vector<double> values(grid.size());
  RandomStream stream(key);
  brownian_at_times(grid.points(), stream, values);
  return SamplePath(grid, std::move(values));
}

SamplePath sample_squared_bessel(const TimeGrid& grid, int m, const StreamKey& key) {
  std::vector<double> values(grid.size());
  squared_bessel_at_times(grid.points(), m, key, values);
  return SamplePath(grid, std::move(values));
}

SamplePath sample_scalar_product(const TimeGrid& grid, int m, const StreamKey& key) {
  std::vector<double> values(grid.size());
  scalar_product_at_times(grid.points(), m, key, values);
  return SamplePath(grid, std::move(values));
}

}  // namespace bessel_br::paths
