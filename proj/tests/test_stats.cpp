#include <gtest/gtest.h>

#include <cmath>

#include "bessel_br/brown_resnick.hpp"
#include "bessel_br/errors.hpp"
#include "bessel_br/stats.hpp"

using namespace bessel_br;
using namespace bessel_br::stats;

TEST(KS, OneSample) {
  const EmpiricalSample s({0.25, 0.75});
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_NEAR(ks_statistic(s, uniform), 0.25, 1e-15);
  const EmpiricalSample one({0.5});
  EXPECT_NEAR(ks_statistic(one, uniform), 0.5, 1e-15);
  EXPECT_THROW(ks_statistic(EmpiricalSample({}), uniform), UsageError);
  EXPECT_THROW(EmpiricalSample({1.0, NAN}), UsageError);
}

TEST(KS, TwoSample) {
  const EmpiricalSample a({1, 2, 3}), b({4, 5, 6}), c({3, 2, 1});
  EXPECT_DOUBLE_EQ(two_sample_ks(a, b), 1.0);
  EXPECT_DOUBLE_EQ(two_sample_ks(a, c), 0.0);
  EXPECT_DOUBLE_EQ(two_sample_ks(EmpiricalSample({1, 1, 2}), EmpiricalSample({1, 2, 2})), 1.0 / 3);
}

TEST(Bivariate, CdfDiff) {
  const std::vector<Pair> pairs = {{0, 0}, {1, 1}};
  const std::vector<Pair> grid = {{0.5, 0.5}, {2, 2}};
  const auto model = [](double x, double y) { return x >= 2 && y >= 2 ? 1.0 : 0.5; };
  EXPECT_DOUBLE_EQ(bivariate_cdf_diff(pairs, model, grid), 0.0);
  EXPECT_EQ(default_fdd_levels().size(), 9u);
}

TEST(Process, Parse) {
  EXPECT_EQ(parse_process("bessel"), ProcessKind::bessel);
  EXPECT_EQ(parse_process("bm"), ProcessKind::bm);
  EXPECT_EQ(to_string(ProcessKind::scalar), "scalar");
  EXPECT_THROW(parse_process("brownian"), UsageError);
}

TEST(Sweep, Shape) {
  const std::vector<double> ns = {100, 1000};
  const auto rep = marginal_gumbel_sweep(ProcessKind::bessel, 3, 1.0, ns, 500, {1, 0, 0});
  ASSERT_EQ(rep.records.size(), 2u);
  EXPECT_EQ(rep.records[0].statistic, "ks_gumbel");
  EXPECT_EQ(rep.final_value, rep.records[1].value);
}

TEST(Sweep, BruteForceScalarPath) {
  const std::vector<double> ns = {100, 1000};
  const auto rep = marginal_gumbel_sweep(ProcessKind::scalar, 3, 1.0, ns, 300, {1, 0, 0});
  for (const auto& r : rep.records) EXPECT_LT(r.value, 0.2);
}

TEST(Sweep, ThreadCountInvariant) {
  const std::vector<double> ns = {100, 1000};
  const auto a = marginal_gumbel_sweep(ProcessKind::bm, 1, 0.5, ns, 400, {3, 0, 0}, 1);
  const auto b = marginal_gumbel_sweep(ProcessKind::bm, 1, 0.5, ns, 400, {3, 0, 0}, 4);
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].value, b.records[i].value);
}

TEST(Fdd, ThreadCountInvariantAndPlausible) {
  const double a = fdd_check(ProcessKind::bessel, 2, 0.0, 1.0, 1000, 400, {5, 0, 0}, 1);
  const double b = fdd_check(ProcessKind::bessel, 2, 0.0, 1.0, 1000, 400, {5, 0, 0}, 3);
  EXPECT_EQ(a, b);
  EXPECT_LT(a, 0.1);
}

TEST(Fdd, BrownResnickAgainstModel) {
  const brown_resnick::BRTruncationSpec spec{};
  EXPECT_LT(br_fdd_check(0.2, 0.7, spec, 4000, {6, 0, 0}), 0.04);
}

TEST(BrSelftest, SmallRun) {
  const auto r = br_selftest(3, 1500, 1e-4, {8, 0, 0});
  ASSERT_EQ(r.marginal_ks.size(), 3u);
  for (const auto& [t, ks] : r.marginal_ks) EXPECT_LT(ks, 0.05) << t;
  EXPECT_LT(r.stationarity_ks, 0.06);
  EXPECT_LT(r.epsilon_ks, 0.06);
}
