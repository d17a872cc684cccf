#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hypbarrier/numeric.hpp"

namespace nm = hypbarrier::numeric;

TEST(Numeric, Arcosh1pMatchesAcoshAwayFromOne) {
  for (double x : {0.5, 1.0, 3.0, 100.0}) EXPECT_NEAR(nm::arcosh1p(x), std::acosh(1.0 + x), 1e-14);
}

TEST(Numeric, Arcosh1pKeepsPrecisionNearOne) {
  // arcosh(1 + x) = sqrt(2x) (1 - x/12 + ...)
  const double x = 1e-20;
  EXPECT_NEAR(nm::arcosh1p(x) / std::sqrt(2.0 * x), 1.0, 1e-15);
  EXPECT_EQ(nm::arcosh1p(0.0), 0.0);
}

TEST(Numeric, LogCoshAndLogSinhDoNotOverflow) {
  EXPECT_NEAR(nm::log_cosh(1000.0), 1000.0 - nm::kLn2, 1e-12);
  EXPECT_NEAR(nm::log_cosh(-1000.0), 1000.0 - nm::kLn2, 1e-12);
  EXPECT_NEAR(nm::log_cosh(0.3), std::log(std::cosh(0.3)), 1e-15);
  EXPECT_NEAR(nm::log_sinh(1000.0), 1000.0 - nm::kLn2, 1e-12);
  EXPECT_NEAR(nm::log_sinh(0.3), std::log(std::sinh(0.3)), 1e-15);
  EXPECT_NEAR(nm::log_sinh(1e-10), std::log(1e-10), 1e-12);
}

TEST(Numeric, FromLogInverses) {
  for (double x : {1e-8, 0.2, 1.0, 7.5, 40.0}) {
    EXPECT_NEAR(nm::asinh_from_log(std::log(x)), std::asinh(x), 1e-13 * std::max(1.0, std::asinh(x)));
  }
  for (double x : {1.0, 1.5, 10.0, 1e6}) EXPECT_NEAR(nm::acosh_from_log(std::log(x)), std::acosh(x), 1e-9);
  // Beyond double range the results stay finite and asymptotically linear.
  EXPECT_NEAR(nm::asinh_from_log(2000.0), 2000.0 + nm::kLn2, 1e-9);
  EXPECT_NEAR(nm::acosh_from_log(2000.0), 2000.0 + nm::kLn2, 1e-9);
}

TEST(Numeric, ArcoshExp) {
  EXPECT_NEAR(nm::arcosh_exp(1.0), 1.657454454153077273, 1e-15);
  EXPECT_NEAR(nm::arcosh_exp(2.0), std::acosh(std::exp(2.0)), 1e-14);
  EXPECT_NEAR(nm::arcosh_exp(800.0), 800.0 + nm::kLn2, 1e-9);
  for (double r : {0.01, 0.5, 3.0, 50.0}) {
    EXPECT_LE(nm::arcosh_exp(r), r + 1.0);
    EXPECT_GT(nm::arcosh_exp(r), r);
  }
}

TEST(Numeric, CappedHyperbolicsStayFinite) {
  EXPECT_TRUE(std::isfinite(nm::cosh_capped(1e6)));
  EXPECT_TRUE(std::isfinite(nm::sinh_capped(-1e6)));
  EXPECT_LT(nm::sinh_capped(-1e6), 0.0);
  EXPECT_DOUBLE_EQ(nm::cosh_capped(2.0), std::cosh(2.0));
}

TEST(Numeric, RngIsDeterministicPerSeedAndStream) {
  nm::Rng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  std::set<double> seen;
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    differs_c |= x != c.uniform();
    differs_d |= x != d.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    seen.insert(x);
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Numeric, RngUniformRange) {
  nm::Rng r(1, 2);
  for (int i = 0; i < 1000; ++i) {
    const double x = r.uniform(-3.0, 5.0);
    EXPECT_GE(x, -3.0);
    EXPECT_LT(x, 5.0);
  }
}
