#include <gtest/gtest.h>

#include <cmath>

#include "bessel_br/errors.hpp"
#include "bessel_br/paths.hpp"

using namespace bessel_br;
using namespace bessel_br::paths;

TEST(TimeGrid, Validation) {
  EXPECT_NO_THROW(TimeGrid({0.0, 0.5, 1.0}));
  EXPECT_THROW(TimeGrid({0.0}), UsageError);
  EXPECT_THROW(TimeGrid({0.1, 1.0}), UsageError);
  EXPECT_THROW(TimeGrid({0.0, 0.9}), UsageError);
  EXPECT_THROW(TimeGrid({0.0, 0.5, 0.5, 1.0}), UsageError);
}

TEST(TimeGrid, DyadicAndLookup) {
  const auto g = make_dyadic_grid(8);
  EXPECT_EQ(g.size(), 257u);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[256], 1.0);
  EXPECT_EQ(g.index_of(0.5), 128u);
  EXPECT_THROW(g.index_of(0.3), UsageError);
  EXPECT_EQ(make_dyadic_grid(0).size(), 2u);
  EXPECT_THROW(make_dyadic_grid(25), ResourceError);
  EXPECT_THROW(make_dyadic_grid(-1), UsageError);
  EXPECT_TRUE(make_dyadic_grid(3) == TimeGrid({0, .125, .25, .375, .5, .625, .75, .875, 1}));
}

TEST(SamplePath, Validation) {
  const TimeGrid g({0.0, 1.0});
  EXPECT_THROW(SamplePath(g, {1.0}), UsageError);
  EXPECT_THROW(SamplePath(g, {1.0, NAN}), UsageError);
  const SamplePath p(g, {1.0, 2.0});
  EXPECT_EQ(p.at(1.0), 2.0);
}

TEST(Brownian, StartsAtZeroAndIsDeterministic) {
  const auto g = make_dyadic_grid(4);
  const auto a = sample_bm(g, {5, 1, 0});
  const auto b = sample_bm(g, {5, 1, 0});
  EXPECT_EQ(a[0], 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(SquaredBessel, NonNegativeAndZeroAtOrigin) {
  const auto g = make_dyadic_grid(5);
  for (int m : {1, 2, 5}) {
    const auto p = sample_squared_bessel(g, m, {11, 0, 0});
    EXPECT_EQ(p[0], 0.0);
    for (double v : p.values()) EXPECT_GE(v, 0.0);
  }
  EXPECT_THROW(sample_squared_bessel(g, 0, {1, 0, 0}), DomainError);
}

TEST(SquaredBessel, MarginalMoments) {
  // xi(t) ~ t chi2_m: mean m t, variance 2 m t^2
  const TimeGrid g({0.0, 0.5, 1.0});
  const int m = 3;
  const int reps = 40000;
  double s1 = 0, s2 = 0, h1 = 0;
  for (int r = 0; r < reps; ++r) {
    const auto p = sample_squared_bessel(g, m, {3, static_cast<std::uint64_t>(r), 0});
    s1 += p[2];
    s2 += p[2] * p[2];
    h1 += p[1];
  }
  const double mean = s1 / reps;
  EXPECT_NEAR(mean, 3.0, 0.05);
  EXPECT_NEAR(s2 / reps - mean * mean, 6.0, 0.25);
  EXPECT_NEAR(h1 / reps, 1.5, 0.03);
}

TEST(ScalarProduct, MarginalMoments) {
  // gamma(1) has mean 0 and variance m
  const TimeGrid g({0.0, 1.0});
  const int m = 2;
  const int reps = 40000;
  double s1 = 0, s2 = 0;
  for (int r = 0; r < reps; ++r) {
    const auto p = sample_scalar_product(g, m, {4, static_cast<std::uint64_t>(r), 0});
    EXPECT_EQ(p[0], 0.0);
    s1 += p[1];
    s2 += p[1] * p[1];
  }
  EXPECT_NEAR(s1 / reps, 0.0, 0.03);
  EXPECT_NEAR(s2 / reps, 2.0, 0.06);
}

TEST(Brownian, Covariance) {
  const TimeGrid g({0.0, 0.25, 1.0});
  const int reps = 40000;
  double c = 0;
  for (int r = 0; r < reps; ++r) {
    const auto p = sample_bm(g, {8, static_cast<std::uint64_t>(r), 0});
    c += p[1] * p[2];
  }
  EXPECT_NEAR(c / reps, 0.25, 0.01);
}

TEST(Kernels, ArbitraryTimesIncludingRepeats) {
  const std::vector<double> times = {0.0, 1.0, 1.0, 1.5};
  std::vector<double> out(times.size());
  squared_bessel_at_times(times, 2, {1, 0, 0}, out);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[1], out[2]);
}
