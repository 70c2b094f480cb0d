#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "bessel_br/errors.hpp"
#include "bessel_br/quadrature.hpp"
#include "bessel_br/rng.hpp"
#include "bessel_br/special.hpp"

using namespace bessel_br;
using namespace bessel_br::numerics;

TEST(LnGamma, KnownValues) {
  EXPECT_NEAR(ln_gamma(1.0), 0.0, 1e-14);
  EXPECT_NEAR(ln_gamma(2.0), 0.0, 1e-14);
  EXPECT_NEAR(ln_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-13);
  EXPECT_NEAR(ln_gamma(10.0), std::log(362880.0), 1e-12);
  EXPECT_NEAR(ln_gamma(1.5), std::lgamma(1.5), 1e-13);
  EXPECT_NEAR(ln_gamma(171.5), std::lgamma(171.5), 1e-9);
  EXPECT_THROW(ln_gamma(0.0), DomainError);
  EXPECT_THROW(ln_gamma(-1.0), DomainError);
}

TEST(RegGamma, ComplementsSumToOne) {
  for (double a : {0.5, 1.0, 1.5, 3.0, 10.0}) {
    for (double x : {0.01, 0.5, 1.0, 4.0, 20.0}) {
      EXPECT_NEAR(reg_gamma_lower(a, x) + reg_gamma_upper(a, x), 1.0, 1e-13) << a << " " << x;
    }
  }
}

TEST(RegGamma, ExponentialCase) {
  for (double x : {0.1, 1.0, 5.0, 50.0, 300.0})
    EXPECT_NEAR(reg_gamma_upper(1.0, x) / std::exp(-x), 1.0, 1e-12);
  EXPECT_EQ(reg_gamma_upper(2.0, 0.0), 1.0);
  EXPECT_THROW(reg_gamma_upper(0.0, 1.0), DomainError);
  EXPECT_THROW(reg_gamma_lower(1.0, -1.0), DomainError);
}

TEST(RegGamma, EvenChiSquareFiniteSum) {
  for (int m : {2, 4, 6, 10}) {
    for (double x : {0.3, 2.0, 15.0, 60.0}) {
      double term = 1.0, sum = 0.0;
      for (int j = 0; j < m / 2; ++j) {
        sum += term;
        term *= 0.5 * x / (j + 1);
      }
      EXPECT_NEAR(reg_gamma_upper(0.5 * m, 0.5 * x), std::exp(-0.5 * x) * sum, 1e-12) << m << " " << x;
    }
  }
}

TEST(RegGamma, HalfIntegerMatchesErfc) {
  for (double x : {0.2, 1.0, 3.0, 9.0})
    EXPECT_NEAR(reg_gamma_upper(0.5, x), std::erfc(std::sqrt(x)), 1e-13);
}

TEST(RegGamma, InverseRoundTrip) {
  for (double a : {0.5, 1.0, 2.5, 7.0}) {
    for (double q : {1e-12, 1e-4, 0.3, 0.5, 0.9, 1 - 1e-9}) {
      const double x = reg_gamma_upper_inverse(a, q);
      EXPECT_NEAR(reg_gamma_upper(a, x) / q, 1.0, 1e-9) << a << " " << q;
    }
  }
  EXPECT_THROW(reg_gamma_upper_inverse(1.0, 0.0), DomainError);
  EXPECT_THROW(reg_gamma_upper_inverse(1.0, 1.0), DomainError);
}

TEST(GammaPdf, IntegratesToOne) {
  const double total = integrate([](double x) { return gamma_pdf(2.5, x); }, 0.0, kInfinity);
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Normal, CdfAndQuantile) {
  EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(std_normal_upper_quantile(0.025), 1.959963984540054, 1e-12);
  EXPECT_NEAR(std_normal_tail(10.0), 7.619853024160527e-24, 1e-36);
  for (double p : {1e-300, 1e-10, 0.01, 0.3, 0.5, 0.77, 0.999999})
    EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)) / p, 1.0, 1e-12) << p;
  EXPECT_THROW(std_normal_quantile(0.0), DomainError);
  EXPECT_THROW(std_normal_quantile(1.0), DomainError);
}

TEST(Quadrature, FiniteAndInfinite) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity), 1.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-8);
  const auto r = integrate_with_error([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  EXPECT_NEAR(r.value, 2.0, 1e-13);
  EXPECT_LE(r.error, 1e-10);
}

TEST(Quadrature, ModifiedBesselIdentity) {
  // integral_0^inf exp(-y - 100/y) dy = 20 K_1(20)
  const double v = integrate([](double y) { return y > 0 ? std::exp(-y - 100.0 / y) : 0.0; }, 0.0,
                             kInfinity, {1e-300, 1e-12, 5000});
  EXPECT_NEAR(v / (20.0 * std::cyl_bessel_k(1.0, 20.0)), 1.0, 1e-9);
}

TEST(Quadrature, RejectsBadInput) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, -kInfinity, 0.0), UsageError);
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, {0.0, 0.0, 10}), UsageError);
  EXPECT_THROW(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-12, 1e-12, 50}),
               ConvergenceError);
}

TEST(Philox, KnownAnswers) {
  const auto zero = philox4x64({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(zero[0], 0x16554d9eca36314cULL);
  EXPECT_EQ(zero[1], 0xdb20fe9d672d0fdcULL);
  EXPECT_EQ(zero[2], 0xd7e772cee186176bULL);
  EXPECT_EQ(zero[3], 0x7e68b68aec7ba23bULL);
  const std::uint64_t f = ~0ULL;
  const auto ones = philox4x64({f, f, f, f}, {f, f});
  EXPECT_EQ(ones[0], 0x87b092c3013fe90bULL);
  EXPECT_EQ(ones[1], 0x438c3c67be8d0224ULL);
  EXPECT_EQ(ones[2], 0x9cc7d7c69cd777b6ULL);
  EXPECT_EQ(ones[3], 0xa09caebf594f0ba0ULL);
  const auto pi = philox4x64({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
                              0x082efa98ec4e6c89ULL},
                             {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL});
  EXPECT_EQ(pi[0], 0xa528f45403e61d95ULL);
  EXPECT_EQ(pi[1], 0x38c72dbd566e9788ULL);
  EXPECT_EQ(pi[2], 0xa5a1610e72fd18b5ULL);
  EXPECT_EQ(pi[3], 0x57bd43b5e52b7fe6ULL);
}

TEST(RandomStream, DeterministicAndKeyed) {
  const StreamKey key{42, 3, 1};
  EXPECT_EQ(std_normal_sample(key, 100), std_normal_sample(key, 100));
  EXPECT_NE(std_normal_sample(key, 10), std_normal_sample(key.with_replicate(4), 10));
  EXPECT_NE(std_normal_sample(key, 10), std_normal_sample(key.offset(1), 10));
  EXPECT_NE(std_normal_sample(key, 10), std_normal_sample({43, 3, 1}, 10));
}

TEST(RandomStream, UniformRange) {
  RandomStream s({1, 0, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, NormalMoments) {
  const auto x = std_normal_sample({7, 0, 0}, 200000);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= x.size() - 1;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.015);
}

TEST(RandomStream, ExponentialMean) {
  RandomStream s({9, 0, 0});
  double sum = 0.0;
  for (int i = 0; i < 200000; ++i) sum += s.exponential();
  EXPECT_NEAR(sum / 200000.0, 1.0, 0.01);
}
