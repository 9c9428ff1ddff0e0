#include "superres/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace superres::numerics {
namespace {

// Explicit sum H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!), independent of the recurrence.
double hermite_explicit(int n, double x) {
  long double sum = 0.0L;
  for (int m = 0; 2 * m <= n; ++m) {
    long double term = std::pow(2.0L * x, n - 2 * m) / (std::tgamma(m + 1.0L) * std::tgamma(n - 2 * m + 1.0L));
    sum += (m % 2 == 0 ? term : -term);
  }
  return static_cast<double>(sum * std::tgamma(n + 1.0L));
}

// erf oracle: Maclaurin series below 3, Lentz continued fraction for erfc above.
double erf_oracle(double x) {
  const long double ax = std::fabs(x);
  long double result;
  if (ax < 3.0L) {
    long double term = ax;
    long double sum = ax;
    for (int k = 1; k < 200; ++k) {
      term *= -ax * ax / k;
      sum += term / (2 * k + 1);
    }
    result = 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
  } else {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    long double f = ax;
    for (int k = 200; k >= 1; --k) {
      f = ax + (k * 0.5L) / f;
    }
    result = 1.0L - std::exp(-ax * ax) / (std::sqrt(std::numbers::pi_v<long double>) * f);
  }
  return static_cast<double>(x < 0 ? -result : result);
}

TEST(Hermite, LowOrderValues) {
  EXPECT_DOUBLE_EQ(hermite_phys(0, 3.7), 1.0);
  EXPECT_DOUBLE_EQ(hermite_phys(1, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(hermite_phys(3, 1.0), -4.0); // 8 - 12
}

TEST(Hermite, MatchesExplicitSum) {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {-3.1, -0.7, 0.0, 0.4, 1.9, 4.2}) {
      const double expected = hermite_explicit(n, x);
      EXPECT_NEAR(hermite_phys(n, x), expected, 1e-11 * std::max(1.0, std::abs(expected)))
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(Hermite, RecurrenceIdentity) {
  for (int n = 1; n <= 10; ++n) {
    for (double x = -5.0; x <= 5.0; x += 0.25) {
      const double next = hermite_phys(n + 1, x);
      const double residual = next - 2.0 * x * hermite_phys(n, x) + 2.0 * n * hermite_phys(n - 1, x);
      EXPECT_LE(std::abs(residual), 1e-10 * std::max(1.0, std::abs(next)));
    }
  }
}

TEST(Hermite, OrderGuard) {
  EXPECT_NO_THROW(hermite_phys(30, 1.0));
  EXPECT_THROW(hermite_phys(31, 1.0), DomainError);
  EXPECT_THROW(hermite_phys(-1, 1.0), DomainError);
}

TEST(Erf, ReferenceValues) {
  EXPECT_EQ(erf(0.0), 0.0);
  EXPECT_NEAR(erf(6.0), 1.0, 1e-12);
  EXPECT_NEAR(erf(1.0), 0.8427007929497149, 1e-12);
  EXPECT_NEAR(erf_oracle(1.0), 0.8427007929497149, 1e-15);
}

TEST(Erf, AgreesWithSeriesOracle) {
  for (double x = -7.0; x <= 7.0; x += 0.0625) {
    EXPECT_NEAR(erf(x), erf_oracle(x), 1e-12) << x;
  }
}

TEST(Erf, AgreesWithQuadratureOfGaussian) {
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.5}) {
    const double q = integrate([](double t) { return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-t * t); },
                               0.0, x);
    EXPECT_NEAR(erf(x), q, 1e-12);
  }
}

TEST(Erf, OddSymmetry) {
  for (double x = 0.0; x <= 8.0; x += 0.037) {
    const double pos = erf(x);
    const double neg = erf(-x);
    if (x > 0.0) {
      EXPECT_TRUE(pos > 0.0 && neg < 0.0) << x;
    }
    EXPECT_LE(std::abs(pos + neg), 1e-14);
  }
}

TEST(Integrate, ConstantAndGaussian) {
  EXPECT_NEAR(integrate([](double) { return 1.0; }, 0.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0),
              std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Integrate, PolynomialsUpToDegreeSixAreExact) {
  // Integral of x^k over [-1, 1] is 2/(k+1) for even k, 0 for odd.
  for (int k = 0; k <= 6; ++k) {
    const double expected = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
    EXPECT_NEAR(integrate([k](double x) { return std::pow(x, k); }, -1.0, 1.0), expected, 1e-12);
  }
  auto poly = [](double x) { return 3.0 - x + 2.5 * x * x * x * x - 0.75 * std::pow(x, 6); };
  EXPECT_NEAR(integrate(poly, -1.0, 1.0), 6.0 + 1.0 - 1.5 / 7.0 * 1.0 * 1.0, 1e-12);
}

TEST(Integrate, ComplexIntegrand) {
  const auto z = integrate([](double x) { return std::polar(1.0, x); }, 0.0, std::numbers::pi);
  EXPECT_NEAR(z.real(), 0.0, 1e-13);
  EXPECT_NEAR(z.imag(), 2.0, 1e-12);
}

TEST(Integrate, BudgetExhaustionCarriesEstimate) {
  const Quadrature tight(1e-15, 1e-15, 3);
  try {
    integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, tight);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError &e) {
    EXPECT_NEAR(e.estimate(), 2.0 / 3.0, 1e-4);
    EXPECT_GT(e.error_bound(), 0.0);
  }
}

TEST(Integrate, RejectsBadInputs) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, 1.0, 0.0), DomainError);
  EXPECT_THROW(Quadrature(0.0, 1e-8, 10), DomainError);
  EXPECT_THROW(Quadrature(1e-8, 1e-8, 0), DomainError);
}

TEST(Sampling, DegenerateGaussianReturnsMean) {
  RngStream s(3);
  EXPECT_EQ(sample_gaussian(s, 2.5, 0.0), 2.5);
  EXPECT_THROW(sample_gaussian(s, 0.0, -1.0), DomainError);
}

TEST(Sampling, GaussianMeanWithinClt) {
  RngStream s(20240611);
  const int draws = 100000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    sum += sample_gaussian(s, 0.0, 1.0);
  }
  EXPECT_LE(std::abs(sum / draws), 4.0 / std::sqrt(static_cast<double>(draws)));
}

TEST(Sampling, SeedReproducibility) {
  RngStream a(99);
  RngStream b(99);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(sample_gaussian(a, 1.0, 2.0), sample_gaussian(b, 1.0, 2.0));
    ASSERT_EQ(sample_poisson(a, 12.5), sample_poisson(b, 12.5));
  }
  EXPECT_EQ(a.counter(), b.counter());
  RngStream c(100);
  RngStream d(99);
  EXPECT_NE(c(), d());
}

TEST(Sampling, SplitStreamsDiffer) {
  const RngStream root(5);
  auto left = root.split(0);
  auto right = root.split(1);
  EXPECT_NE(left(), right());
  auto again = root.split(0);
  auto fresh = root.split(0);
  EXPECT_EQ(again(), fresh());
}

TEST(Sampling, Poisson) {
  RngStream s(17);
  EXPECT_EQ(sample_poisson(s, 0.0), 0u);
  EXPECT_THROW(sample_poisson(s, -0.5), DomainError);
  const double big = sample_poisson(s, 1e6);
  EXPECT_LE(std::abs(big - 1e6), 5.0 * 1e3);

  const int draws = 50000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double k = static_cast<double>(sample_poisson(s, 7.0));
    sum += k;
    sum_sq += k * k;
  }
  const double mean = sum / draws;
  const double var = sum_sq / draws - mean * mean;
  EXPECT_NEAR(mean, 7.0, 4.0 * std::sqrt(7.0 / draws));
  EXPECT_NEAR(var, 7.0, 0.25);
}

} // namespace
} // namespace superres::numerics
