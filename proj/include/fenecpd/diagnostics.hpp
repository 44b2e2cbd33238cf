#pragma once

#include <optional>
#include <vector>

#include "fenecpd/norms.hpp"
#include "fenecpd/solver.hpp"
#include "fenecpd/wellposedness.hpp"

namespace fenecpd {

Norms norms(const DensityState& f, const Mesh& mesh);

struct L1Report {
  bool pass = false;
  double worst_ratio = 0.0;  ///< max_t |f(t)|_L1 / |f0|_L1
  double excess() const { return worst_ratio > 1.0 ? worst_ratio - 1.0 : 0.0; }
};

L1Report check_l1_bound(const InvariantSeries& series, double tol_inv = 1e-3);

struct PositivityReport {
  double min_value = 0.0;             ///< over all times
  double worst_neg_fraction = 0.0;    ///< max_t neg_mass / positive mass
  double final_neg_mass = 0.0;
  double max_neg_mass = 0.0;
  std::vector<double> min_per_time;
  std::vector<double> neg_mass_per_time;
  bool flagged = false;               ///< a negative nodal value occurred
};

PositivityReport check_positivity(const InvariantSeries& series);

struct EnergyReport {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> slack;  ///< one per step (index 0 is the first step)
  double min_slack = 0.0;
  bool pass = false;
};

/// Discrete energy inequality
///   (|f^{n+1}|^2 - |f^n|^2)/dt + 2 c1 |f^{n+1}|_{H1}^2 <= 2 c2 |f^{n+1}|^2
/// with c1 = c1_factor * lambda_m (0 when lambda_m is absent) and c2 the
/// smallest nonnegative constant that makes the first step hold, frozen
/// afterwards. Writes the slack into series[n].energy_slack (0 at t = 0).
EnergyReport check_energy(InvariantSeries& series, double dt, const CoercivityReport& coercivity,
                          double c1_factor = 0.95);

/// Slack of the same inequality for given constants; the series is not modified.
EnergyReport evaluate_energy(const InvariantSeries& series, double dt, double c1, double c2);

/// Nodal interpolant of (1-|q|^2)^(q0^2/theta0), uniform in x, with unit
/// discrete integral.
DensityState analytic_steady_state(double theta0, double q0, const Mesh& mesh);

/// Relative L2 distance |a - b| / |b|.
double relative_l2_distance(const NormEvaluator& norms, const Vector& a, const Vector& b);

/// Mass of f in each connector cell (integrated over Omega), normalized to
/// sum one. Bins follow Mesh::q_cells().
std::vector<double> q_histogram(const Mesh& mesh, const Vector& f);

/// Cell masses of the normalized equilibrium (1-|q|^2)^(q0^2/theta0) on the
/// connector cells of mesh (dq = 1), by high-order quadrature.
std::vector<double> equilibrium_histogram(const Mesh& mesh, double theta0, double q0);

/// Half the L1 distance of two histograms.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace fenecpd
