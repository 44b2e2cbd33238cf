#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fenecpd/diagnostics.hpp"
#include "fenecpd/error.hpp"
#include "fenecpd/solver.hpp"

using namespace fenecpd;

namespace {

Trajectory isothermal_run(const Mesh& mesh, double t_end, double theta0_initial, double q0 = 1.0) {
  static const TemperatureField theta({}, 1);
  static const FlowField flow({}, 1, 1);
  RunSpec s;
  s.mesh = &mesh;
  s.params.eps = 1e-6;
  s.params.q0 = q0;
  s.params.dt = 0.05;
  s.params.t_end = t_end;
  s.theta = &theta;
  s.flow = &flow;
  s.initial = initial_condition(mesh, s.params, theta, {InitialFamily::EquilibriumUniform, theta0_initial, {}});
  return run(s);
}

}  // namespace

TEST(Norms, ZeroFunction) {
  const Mesh m = build_mesh(1, 1, 6, 6);
  const Norms n = norms(DensityState{0.0, Vector::Zero(m.num_dofs())}, m);
  EXPECT_EQ(n.l1, 0.0);
  EXPECT_EQ(n.l2, 0.0);
  EXPECT_EQ(n.h1, 0.0);
}

TEST(Norms, SingleHatClosedForm) {
  const Mesh m = build_mesh(1, 1, 5, 8);
  const double hx = 0.2, hq = 0.25;
  Vector f = Vector::Zero(m.num_dofs());
  f[m.num_dofs() / 2] = 1.0;
  const Norms n = norms(DensityState{0.0, f}, m);
  const double l2sq = (2 * hx / 3) * (2 * hq / 3);
  const double grad = (2 / hx) * (2 * hq / 3) + (2 * hx / 3) * (2 / hq);
  EXPECT_NEAR(n.l2 * n.l2, l2sq, 1e-15);
  EXPECT_NEAR(n.h1 * n.h1, l2sq + grad, 1e-13);
  EXPECT_NEAR(n.l1, hx * hq, 1e-15);
  const NormEvaluator ne(m);
  EXPECT_NEAR(ne.mass(f), hx * hq, 1e-15);
  EXPECT_EQ(ne.negative_mass(f), 0.0);
  EXPECT_NEAR(ne.negative_mass(-f), hx * hq, 1e-15);
}

TEST(Norms, H1IsL2PlusStiffness) {
  const Mesh m = build_mesh(2, 1, 5, 6);
  Vector f(m.num_dofs());
  for (Eigen::Index k = 0; k < f.size(); ++k) f[k] = std::sin(0.37 * k) + 0.2;
  const NormEvaluator ne(m);
  const Norms n = ne.norms(f);
  EXPECT_NEAR(n.h1 * n.h1, n.l2 * n.l2 + f.dot(ne.stiffness() * f), 1e-14 * n.h1 * n.h1);
  EXPECT_THROW(norms(DensityState{0.0, Vector::Ones(2)}, m), ValidationError);
}

TEST(L1Bound, ConstantSeriesHasUnitRatio) {
  InvariantSeries s(5);
  for (auto& r : s) r.l1 = 0.8;
  const L1Report rep = check_l1_bound(s);
  EXPECT_EQ(rep.worst_ratio, 1.0);
  EXPECT_EQ(rep.excess(), 0.0);
  EXPECT_TRUE(rep.pass);
  s[3].l1 = 0.8 * 1.01;
  EXPECT_FALSE(check_l1_bound(s).pass);
  EXPECT_NEAR(check_l1_bound(s).excess(), 0.01, 1e-12);
}

TEST(L1Bound, IsothermalRunStaysBelowInitialMass) {
  const Mesh m = build_mesh(1, 1, 4, 32, 3, {.x_periodic = true});
  const Trajectory t = isothermal_run(m, 1.0, 0.5);
  EXPECT_LE(check_l1_bound(t.series).worst_ratio, 1.0 + 1e-6);
}

TEST(Positivity, EquilibriumStaysNonnegative) {
  const Mesh m = build_mesh(1, 1, 4, 32, 3, {.x_periodic = true});
  const Trajectory t = isothermal_run(m, 1.0, 1.0);
  const PositivityReport p = check_positivity(t.series);
  EXPECT_GE(p.min_value, -1e-10);
  EXPECT_FALSE(p.flagged);
  EXPECT_EQ(p.min_per_time.size(), t.series.size());
}

TEST(Positivity, NegativeNodeIsFlagged) {
  const Mesh m = build_mesh(1, 1, 6, 6);
  const NormEvaluator ne(m);
  Vector f = Vector::Ones(m.num_dofs());
  f[7] = -2.0;
  InvariantSeries s{ne.record(DensityState{0.0, f})};
  const PositivityReport p = check_positivity(s);
  EXPECT_TRUE(p.flagged);
  EXPECT_EQ(p.min_value, -2.0);
  EXPECT_GT(p.worst_neg_fraction, 0.0);
  EXPECT_GT(p.final_neg_mass, 0.0);
}

TEST(MassDrift, ShrinksUnderRefinement) {
  double prev = INFINITY;
  for (int n_q : {32, 64, 128}) {
    const Mesh m = build_mesh(1, 1, 4, n_q, 3, {.x_periodic = true});
    const Trajectory t = isothermal_run(m, 0.5, 1.0);
    const double drift = std::abs(t.series.back().mass - t.series.front().mass);
    EXPECT_LT(drift, prev);
    prev = drift;
  }
}

TEST(Energy, IsothermalPassesAndInflatedConstantFails) {
  // q0 = 0.5 makes both margins positive; the coercive operator then drains mass
  const Mesh m = build_mesh(1, 1, 4, 32, 3, {.x_periodic = true});
  Trajectory t = isothermal_run(m, 1.0, 0.25, 0.5);
  const TemperatureField theta({}, 1);
  Params p;
  p.q0 = 0.5;
  const CoercivityReport audit_report = audit(m, p, theta);
  ASSERT_TRUE(audit_report.lambda_m && audit_report.lambda_M);
  const EnergyReport e = check_energy(t.series, t.dt, audit_report);
  EXPECT_TRUE(e.pass);
  EXPECT_GE(e.min_slack, 0.0);
  EXPECT_EQ(e.slack.size(), t.series.size() - 1);
  EXPECT_EQ(t.series[0].energy_slack, 0.0);
  EXPECT_EQ(t.series[3].energy_slack, e.slack[2]);
  const EnergyReport inflated = evaluate_energy(t.series, t.dt, 10.0 * e.c1, e.c2);
  EXPECT_LT(inflated.min_slack, 0.0);
  EXPECT_FALSE(inflated.pass);
}

TEST(Energy, NoCoercivityMeansZeroC1) {
  InvariantSeries s(3);
  for (int k = 0; k < 3; ++k) {
    s[k].l2 = 1.0 + 0.1 * k;
    s[k].h1 = 2.0;
  }
  const EnergyReport e = check_energy(s, 0.1, CoercivityReport{});
  EXPECT_EQ(e.c1, 0.0);
  EXPECT_GT(e.c2, 0.0);
  EXPECT_GE(e.slack[0], 0.0);
}

TEST(SteadyState, ShapeAndNormalization) {
  const Mesh m = build_mesh(1, 1, 4, 16, 3, {.x_periodic = true});
  const DensityState a = analytic_steady_state(1.0, 1.0, m);
  const DensityState b = analytic_steady_state(0.5, 1.0, m);
  EXPECT_NEAR(discrete_integral(m, a.coeffs), 1.0, 1e-12);
  EXPECT_NEAR(discrete_integral(m, b.coeffs), 1.0, 1e-12);
  // halving theta0 squares the profile
  const double ratio = b.coeffs[3] / (a.coeffs[3] * a.coeffs[3]);
  for (std::size_t i = 0; i < m.num_dofs(); ++i) {
    const double q = m.dof_coords(i)[1];
    EXPECT_NEAR(a.coeffs[i] / (1 - q * q), a.coeffs[3] / (1 - std::pow(m.dof_coords(3)[1], 2)), 1e-12);
    EXPECT_NEAR(b.coeffs[i], ratio * a.coeffs[i] * a.coeffs[i], 1e-12);
  }
  EXPECT_THROW(analytic_steady_state(0.0, 1.0, m), ValidationError);
}

TEST(SteadyState, IsothermalRunApproachesEquilibriumShape) {
  const Mesh m = build_mesh(1, 1, 4, 64, 3, {.x_periodic = true});
  const Trajectory t = isothermal_run(m, 5.0, 4.0);
  const NormEvaluator ne(m);
  const DensityState eq = analytic_steady_state(1.0, 1.0, m);
  const Vector& last = t.snapshots.back().coeffs;
  const Vector shape = last / discrete_integral(m, last);
  EXPECT_LT(relative_l2_distance(ne, shape, eq.coeffs), 0.01);
}

TEST(Histograms, EquilibriumAndDensityAgree) {
  const Mesh m = build_mesh(1, 1, 4, 40, 3, {.x_periodic = true});
  const auto eq = equilibrium_histogram(m, 1.0, 1.0);
  EXPECT_EQ(eq.size(), 40u);
  EXPECT_NEAR(std::accumulate(eq.begin(), eq.end(), 0.0), 1.0, 1e-14);
  // (1 - q^2) integrates in closed form on each cell
  const double h = 0.05;
  for (int k = 0; k < 40; ++k) {
    const double a = -1 + k * h, b = a + h;
    const double exact = ((b - b * b * b / 3) - (a - a * a * a / 3)) / (4.0 / 3.0);
    EXPECT_NEAR(eq[k], exact, 1e-14);
  }
  const auto hp = q_histogram(m, analytic_steady_state(1.0, 1.0, m).coeffs);
  EXPECT_NEAR(std::accumulate(hp.begin(), hp.end(), 0.0), 1.0, 1e-14);
  EXPECT_LT(tv_distance(hp, eq), 0.01);
  EXPECT_EQ(tv_distance(eq, eq), 0.0);
  EXPECT_THROW(tv_distance(eq, std::vector<double>(3)), ValidationError);
}

TEST(Histograms, TwoDimensionalConnector) {
  const Mesh m = build_mesh(1, 2, 4, 16);
  const auto eq = equilibrium_histogram(m, 1.0, 1.0);
  EXPECT_EQ(eq.size(), m.q_cells().size());
  EXPECT_NEAR(std::accumulate(eq.begin(), eq.end(), 0.0), 1.0, 1e-14);
  const auto hp = q_histogram(m, analytic_steady_state(1.0, 1.0, m).coeffs);
  EXPECT_LT(tv_distance(hp, eq), 0.1);
}
