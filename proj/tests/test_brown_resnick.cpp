#include <gtest/gtest.h>

#include <cmath>

#include "bessel_br/brown_resnick.hpp"
#include "bessel_br/errors.hpp"
#include "bessel_br/special.hpp"

using namespace bessel_br;
using namespace bessel_br::brown_resnick;

TEST(Gumbel, CdfAndQuantile) {
  EXPECT_NEAR(gumbel_cdf(0.0), std::exp(-1.0), 1e-15);
  for (double p : {1e-6, 0.1, 0.5, 0.99}) EXPECT_NEAR(gumbel_cdf(gumbel_quantile(p)), p, 1e-13);
  EXPECT_THROW(gumbel_quantile(0.0), DomainError);
}

TEST(Truncation, LevelAndValidation) {
  EXPECT_NEAR(truncation_level(1e-4), numerics::std_normal_upper_quantile(5e-5), 1e-14);
  EXPECT_NEAR(truncation_level(0.05), 1.959963984540054, 1e-12);
  EXPECT_THROW((BRTruncationSpec{0.0, 10}.validate()), UsageError);
  EXPECT_THROW((BRTruncationSpec{1.0, 10}.validate()), UsageError);
  EXPECT_THROW((BRTruncationSpec{0.1, 0}.validate()), UsageError);
}

TEST(HuslerReiss, Lambda) {
  EXPECT_DOUBLE_EQ(hr_lambda(0.0, 1.0).lambda, 0.5);
  EXPECT_DOUBLE_EQ(hr_lambda(1.0, 0.0).lambda, 0.5);
  EXPECT_DOUBLE_EQ(hr_lambda(0.3, 0.3).lambda, 0.0);
  EXPECT_THROW(hr_lambda(-0.1, 0.5), DomainError);
  EXPECT_THROW(hr_lambda(0.1, 1.5), DomainError);
}

TEST(HuslerReiss, BivariateCdf) {
  EXPECT_NEAR(hr_bivariate_cdf(0.0, 0.0, {0.5}), 0.2508, 5e-4);
  // lambda -> 0: complete dependence; lambda -> infinity: independence
  EXPECT_NEAR(hr_bivariate_cdf(0.3, -0.2, {0.0}), gumbel_cdf(-0.2), 1e-15);
  EXPECT_NEAR(hr_bivariate_cdf(0.3, -0.2, {INFINITY}), gumbel_cdf(0.3) * gumbel_cdf(-0.2), 1e-15);
  EXPECT_NEAR(hr_bivariate_cdf(1.0, -1.0, {0.7}), hr_bivariate_cdf(-1.0, 1.0, {0.7}), 1e-15);
  // Frechet bounds
  for (double l : {0.1, 0.5, 2.0}) {
    const double v = hr_bivariate_cdf(0.5, 1.0, {l});
    EXPECT_LE(v, gumbel_cdf(0.5));
    EXPECT_GE(v, gumbel_cdf(0.5) * gumbel_cdf(1.0));
  }
}

TEST(HuslerReiss, ExtremalCoefficient) {
  EXPECT_DOUBLE_EQ(extremal_coefficient({0.0}), 1.0);
  EXPECT_NEAR(extremal_coefficient({0.5}), 2 * numerics::std_normal_cdf(0.5), 1e-15);
  EXPECT_LE(extremal_coefficient({40.0}), 2.0);
  // theta = -log P(M(s) <= 0, M(t) <= 0)
  EXPECT_NEAR(-std::log(hr_bivariate_cdf(0.0, 0.0, {0.5})), extremal_coefficient({0.5}), 1e-12);
}

TEST(SampleBR, DeterministicWithInfo) {
  const auto g = paths::make_dyadic_grid(4);
  BRSampleInfo info;
  const auto a = sample_br(g, {}, {1, 0, 0}, &info);
  const auto b = sample_br(g, {}, {1, 0, 0});
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_GE(info.points_used, 1u);
  EXPECT_NEAR(info.stop_level, truncation_level(1e-4), 1e-15);
}

TEST(SampleBR, ExhaustedBudgetThrowsWithPartialPath) {
  const auto g = paths::make_dyadic_grid(6);
  try {
    sample_br(g, {1e-12, 1}, {2, 0, 0});
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.points_used(), 1u);
    EXPECT_EQ(e.partial_path().size(), g.size());
  }
}

TEST(SampleBR, MarginalMeanIsEulerGamma) {
  const paths::TimeGrid g({0.0, 1.0});
  const int reps = 20000;
  double s0 = 0, s1 = 0;
  for (int r = 0; r < reps; ++r) {
    const auto p = sample_br(g, {}, {3, static_cast<std::uint64_t>(r), 0});
    s0 += p[0];
    s1 += p[1];
  }
  EXPECT_NEAR(s0 / reps, 0.5772156649, 0.03);
  EXPECT_NEAR(s1 / reps, 0.5772156649, 0.03);
}
