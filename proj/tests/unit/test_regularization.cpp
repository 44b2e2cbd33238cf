#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fenecpd/error.hpp"
#include "fenecpd/regularization.hpp"

using namespace fenecpd;

namespace {

std::vector<double> log_grid(int n) {
  // n points, half positive and half negative, log-spaced over 1e-12..1e12
  std::vector<double> z;
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    const double v = std::pow(10.0, -12.0 + 24.0 * i / (half - 1));
    z.push_back(v);
    z.push_back(-v);
  }
  return z;
}

}  // namespace

TEST(Entropy, Values) {
  EXPECT_EQ(entropy(0.0), 0.0);
  EXPECT_EQ(entropy(1.0), 0.0);
  EXPECT_NEAR(entropy(std::exp(1.0)), std::exp(1.0), 1e-15);
  EXPECT_NEAR(entropy(1e-300), 0.0, 1e-295);
}

TEST(Entropy, RejectsNegative) {
  EXPECT_THROW(entropy(-1e-12), ValidationError);
  EXPECT_THROW(entropy(std::nan("")), ValidationError);
}

TEST(GEps, BranchValues) {
  EXPECT_NEAR(g_eps(20.0, 0.1), std::log(10.0), 1e-15);
  EXPECT_NEAR(g_eps(20.0, 0.1), 2.302585, 1e-6);
  EXPECT_EQ(g_eps(1.0, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(g_eps(-2.0, 0.1), -0.5);
  EXPECT_DOUBLE_EQ(g_eps(0.01, 0.1), std::log(0.1));
  EXPECT_DOUBLE_EQ(g_eps(-0.1, 0.1), std::log(0.1));
}

TEST(GEps, ContinuousAtBreakpoints) {
  for (double eps : {0.5, 0.1, 1e-2, 1e-3, 1e-6}) {
    const double points[] = {1.0 / eps, eps, 1.0 / std::log(eps)};
    for (double b : points) {
      const double left = g_eps(std::nextafter(b, -INFINITY), eps);
      const double right = g_eps(std::nextafter(b, INFINITY), eps);
      EXPECT_NEAR(left, right, 1e-12) << "eps=" << eps << " breakpoint=" << b;
      EXPECT_NEAR(g_eps(b, eps), left, 1e-12);
    }
  }
}

TEST(GEps, BoundedByLogEps) {
  const auto grid = log_grid(10000);
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const double bound = std::abs(std::log(eps));
    for (double z : grid) EXPECT_LE(std::abs(g_eps(z, eps)), bound * (1 + 1e-15)) << z;
    EXPECT_LE(std::abs(g_eps(0.0, eps)), bound);
  }
}

TEST(GEps, MonotoneInsideConstantOutside) {
  const double eps = 0.05;
  double prev = g_eps(eps, eps);
  for (int i = 1; i <= 1000; ++i) {
    const double z = eps * std::pow(1.0 / (eps * eps), i / 1000.0);
    const double v = g_eps(z, eps);
    EXPECT_GE(v, prev);
    prev = v;
  }
  for (double z : {1.0 / eps, 30.0, 1e3, 1e9}) EXPECT_EQ(g_eps(z, eps), std::log(1.0 / eps));
  const double lower = 1.0 / std::log(eps);
  for (int i = 0; i <= 100; ++i) {
    const double z = lower + (eps - lower) * i / 100.0;
    EXPECT_EQ(g_eps(z, eps), std::log(eps)) << z;
  }
}

TEST(GEps, SlopeMatchesReciprocal) {
  const double eps = 0.01, h = 1e-6;
  for (double z : {0.02, 0.1, 0.5, 1.0, 3.0, 50.0}) {
    const double slope = (g_eps(z + h, eps) - g_eps(z - h, eps)) / (2 * h);
    EXPECT_NEAR(slope, 1.0 / z, 1e-6 * std::max(1.0, 1.0 / (z * z))) << z;
  }
}

TEST(GEps, RejectsInvalidEps) {
  EXPECT_THROW(g_eps(1.0, 0.0), ValidationError);
  EXPECT_THROW(g_eps(1.0, 1.0), ValidationError);
  EXPECT_THROW(g_eps(1.0, -0.1), ValidationError);
}

TEST(EEps, Values) {
  EXPECT_EQ(e_eps(0.0, 0.1), 0.0);
  EXPECT_NEAR(e_eps(20.0, 0.1), 20 * std::log(10.0), 1e-13);
  EXPECT_NEAR(e_eps(20.0, 0.1), 46.0517, 1e-4);
}

TEST(EEps, BoundWithTabulatedConstant) {
  const double c1 = entropy_bound_constant(1.0);
  EXPECT_DOUBLE_EQ(c1, 1.0);
  for (double eps : {0.5, 0.1, 1e-3}) {
    for (int i = -500; i <= 500; ++i) {
      const double z = i / 100.0;
      EXPECT_LE(std::abs(e_eps(z, eps)), c1 + z * z) << z;
    }
  }
  for (double delta : {0.1, 0.25, 0.5}) {
    const double c = entropy_bound_constant(delta);
    EXPECT_GE(c, 1.0);
    for (double eps : {0.1, 1e-3, 1e-8}) {
      for (int i = -400; i <= 400; ++i) {
        const double z = std::pow(10.0, i / 100.0);
        EXPECT_LE(std::abs(e_eps(z, eps)), c + std::pow(z, 1 + delta) + 1e-9) << delta << " " << z;
      }
    }
  }
}

TEST(EEps, MatchesEntropyOnceEpsSmall) {
  for (double z : {0.3, 1.0, 2.0, 17.0}) {
    const double eps = 0.5 * std::min(z, 1.0 / z);
    EXPECT_EQ(e_eps(z, eps), entropy(z));
    EXPECT_EQ(e_eps(z, eps * 1e-3), entropy(z));
  }
}

TEST(FeneFactor, Values) {
  const double zero[] = {0.0};
  EXPECT_EQ(fene_factor(zero, 0.0), 1.0);
  const double unit[] = {0.6, 0.8};
  EXPECT_NEAR(fene_factor(unit, 0.1), 10.0, 1e-12);
  EXPECT_NEAR(fene_factor(0.25, 0.0), 4.0 / 3.0, 1e-15);
}

TEST(FeneFactor, MonotoneAndBounded) {
  const double eps = 0.02;
  double prev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = i / 99.0;
    const double q[] = {r / std::sqrt(2.0), r / std::sqrt(2.0)};
    const double v = fene_factor(q, eps);
    EXPECT_GT(v, prev);
    EXPECT_LE(v, 1.0 / eps * (1 + 1e-14));
    prev = v;
  }
}

TEST(FeneFactor, RejectsSingularAndOutside) {
  const double unit[] = {1.0};
  EXPECT_THROW(fene_factor(unit, 0.0), ValidationError);
  EXPECT_THROW(fene_factor(1.5, 0.1), ValidationError);
  EXPECT_THROW(fene_factor(0.5, -0.1), ValidationError);
}
