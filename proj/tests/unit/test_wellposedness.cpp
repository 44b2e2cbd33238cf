#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fenecpd/assembly.hpp"
#include "fenecpd/error.hpp"
#include "fenecpd/linalg.hpp"
#include "fenecpd/wellposedness.hpp"

using namespace fenecpd;

namespace {

constexpr double kPi = std::numbers::pi;

TemperatureField affine(double slope, int dx = 1) {
  return TemperatureField({ThetaFamily::Affine, 1.0, {slope, 0.0}, 0, 0}, dx);
}

}  // namespace

TEST(GradientCondition, WorkedMargins) {
  EXPECT_NEAR(check_gradient_condition(TemperatureField({}, 1), 7.0), 1.0, 1e-12);
  EXPECT_NEAR(check_gradient_condition(affine(0.1), 1.0), 0.99, 1e-12);
  EXPECT_NEAR(check_gradient_condition(affine(0.1), 20.0), -3.0, 1e-12);
}

TEST(StrongCondition, WorkedMargins) {
  const TemperatureField four({ThetaFamily::Constant, 4.0, {0, 0}, 0, 0}, 1);
  EXPECT_NEAR(check_strong_condition(four, 0.5, 1.0), 56.0, 1e-12);
  EXPECT_NEAR(check_strong_condition(TemperatureField({}, 1), 1.0, 1.0), -1.0, 1e-12);
}

TEST(StrongCondition, SignStableAcrossRefinement) {
  const TemperatureField theta = affine(0.1);
  for (int n : {16, 32, 64}) {
    const Mesh m = build_mesh(1, 1, 4, n);
    const double margin = check_strong_condition(theta, 0.2, estimate_hardy_constant(m).c_hardy);
    EXPECT_GT(margin, 20.0);
  }
}

TEST(Margins, MonotoneInGradientAndHardyConstant) {
  double prev_w = INFINITY, prev_s = INFINITY;
  for (int i = 0; i <= 20; ++i) {
    const TemperatureField theta = affine(0.05 * i);
    const double w = check_gradient_condition(theta, 0.5);
    const double s = check_strong_condition(theta, 0.5, 0.9);
    EXPECT_LT(w, prev_w);
    EXPECT_LT(s, prev_s);
    prev_w = w;
    prev_s = s;
  }
  double prev = INFINITY;
  for (int i = 0; i <= 20; ++i) {
    const double s = check_strong_condition(affine(0.1), 0.5, 0.1 * i);
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(Hardy, NondecreasingUnderRefinementAndAboveRayleighBound) {
  // psi = 1 - q^2: int psi^2/(1-q^2)^2 = 2, int psi'^2 = 8/3
  const double lower = std::sqrt(0.75);
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const HardyEstimate h = estimate_hardy_constant(build_mesh(1, 1, 4, n));
    EXPECT_EQ(h.n_q, n);
    EXPECT_GE(h.c_hardy, prev);
    EXPECT_GE(h.c_hardy, lower);
    prev = h.c_hardy;
  }
  EXPECT_LT(prev, 1.0);
}

TEST(Hardy, LastDoublingChangeSmall) {
  const double a = estimate_hardy_constant(build_mesh(1, 1, 4, 64)).c_hardy;
  const double b = estimate_hardy_constant(build_mesh(1, 1, 4, 128)).c_hardy;
  EXPECT_LT(std::abs(b - a) / b, 0.02);
}

TEST(Hardy, ScalesWithDomain) {
  const Mesh m = build_mesh(1, 1, 4, 32);
  const double a = estimate_hardy_constant(m).c_hardy;
  const double b = estimate_hardy_constant(m.scaled(2.0)).c_hardy;
  EXPECT_NEAR(b / a, 2.0, 1e-7);
}

TEST(Hardy, TwoDimensionalBallNondecreasing) {
  const double a = estimate_hardy_constant(build_mesh(1, 2, 4, 16)).c_hardy;
  const double b = estimate_hardy_constant(build_mesh(1, 2, 4, 32)).c_hardy;
  EXPECT_GT(a, 0.0);
  EXPECT_GE(b, a);
}

TEST(GeneralizedEigen, StiffnessScalingHalvesSquareRoot) {
  const Mesh m = build_mesh(1, 1, 6, 12);
  const Assembler as(m);
  const SparseMatrix k = add_same_pattern(as.stiffness_x(), as.stiffness_q());
  const SparseMatrix k4 = 4.0 * k;
  const double a = std::sqrt(largest_generalized_eigenvalue(as.mass(), k).value);
  const double b = std::sqrt(largest_generalized_eigenvalue(as.mass(), k4).value);
  EXPECT_NEAR(b, 0.5 * a, 1e-7 * a);
  const double lo = smallest_generalized_eigenvalue(k, as.mass()).value;
  EXPECT_NEAR(lo, 1.0 / (a * a), 1e-7 * lo);
}

TEST(GeneralizedEigen, RejectsIndefinite) {
  const Mesh m = build_mesh(1, 1, 4, 4);
  const Assembler as(m);
  const SparseMatrix neg = -1.0 * as.mass();
  EXPECT_THROW(smallest_generalized_eigenvalue(neg, as.mass()), SolverError);
}

TEST(Poincare, SeparableOracle) {
  // -Laplace on (0,1) x (-1,1): lowest eigenvalue pi^2 + (pi/2)^2
  const double exact = 1.0 / std::sqrt(kPi * kPi * 1.25);
  const double c16 = estimate_poincare_constant(build_mesh(1, 1, 16, 16));
  const double c32 = estimate_poincare_constant(build_mesh(1, 1, 32, 32));
  EXPECT_LT(std::abs(c32 - exact) / exact, 0.05);
  EXPECT_LT(std::abs(c32 - c16) / c32, 0.02);
  EXPECT_LE(c16, exact);
  EXPECT_LE(c32, exact);
}

TEST(Poincare, DoublesWithDomain) {
  const Mesh m = build_mesh(1, 1, 8, 8);
  EXPECT_NEAR(estimate_poincare_constant(m.scaled(2.0)) / estimate_poincare_constant(m), 2.0, 1e-7);
}

TEST(Coercivity, ClosedForms) {
  const auto c = weak_coercivity(2.0, 0.0, 0.5, 2.0, 0.0);
  EXPECT_NEAR(c.tilde, std::min(2.0, 2.0 / 4.0) / 0.5, 1e-14);
  const auto d = weak_coercivity(1.0, 0.1, 1.0, 1.0, 0.5);
  EXPECT_NEAR(d.tilde, 0.9, 1e-14);
  EXPECT_NEAR(d.full, 0.9 / 1.25, 1e-14);
  const auto s = strong_coercivity(4.0, 0.0, 1.0, 0.5, 1.0, 0.0);
  EXPECT_NEAR(s.tilde, std::min(4.0, 16.0 - 2.0), 1e-13);
}

TEST(Coercivity, NonPositiveMarginsNameTheCondition) {
  try {
    weak_coercivity(1.0, 0.1, 1.0, 20.0, 0.3);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("weak coercivity"), std::string::npos);
  }
  try {
    strong_coercivity(1.0, 0.0, 1.0, 1.0, 1.0, 0.3);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("strong coercivity"), std::string::npos);
  }
}

TEST(Audit, ReportsConstantsOnlyForPositiveMargins) {
  const Mesh m = build_mesh(1, 1, 8, 16);
  Params p;
  p.q0 = 0.2;
  const CoercivityReport ok = audit(m, p, affine(0.1));
  EXPECT_NEAR(ok.margin_weak, 1.0 - 0.04 * 0.01, 1e-12);
  EXPECT_GT(ok.margin_strong, 0.0);
  EXPECT_TRUE(ok.lambda_m && ok.lambda_M);
  EXPECT_GT(ok.c_hardy, 0.0);
  EXPECT_GT(ok.c_poincare, 0.0);
  p.q0 = 1.0;
  const CoercivityReport weak_only = audit(m, p, affine(0.1));
  EXPECT_TRUE(weak_only.lambda_m.has_value());
  EXPECT_FALSE(weak_only.lambda_M.has_value());
  p.q0 = 20.0;
  const CoercivityReport none = audit(m, p, affine(0.1));
  EXPECT_FALSE(none.lambda_m.has_value());
  EXPECT_FALSE(none.lambda_M.has_value());
}

TEST(Coercivity, RandomVectorsRespectDiscreteBound) {
  const Mesh m = build_mesh(1, 1, 16, 16);
  Params p;
  p.q0 = 0.2;
  p.eps = 0.1;
  const TemperatureField theta = affine(0.1);
  const CoercivityReport rep = audit(m, p, theta);
  const Assembler as(m);
  const auto terms = as.assemble_static(p, theta, FlowField({}, 1, 1), 0.0);
  const SparseMatrix b = terms.b_form();
  const SparseMatrix bf = add_same_pattern(b, terms.fene);
  const SparseMatrix g = add_same_pattern(add_same_pattern(as.mass(), as.stiffness_x()), as.stiffness_q());
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    Vector x(m.num_dofs());
    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = nd(rng);
    const double gx = x.dot(g * x);
    EXPECT_GE(x.dot(b * x), 0.95 * *rep.lambda_m * gx);
    EXPECT_GE(x.dot(bf * x), 0.95 * *rep.lambda_M * gx);
  }
  const double smallest = smallest_generalized_eigenvalue(b, g).value;
  EXPECT_GE(smallest, 0.95 * *rep.lambda_m);
}
