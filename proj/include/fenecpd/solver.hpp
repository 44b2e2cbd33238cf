#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fenecpd/assembly.hpp"
#include "fenecpd/error.hpp"
#include "fenecpd/linalg.hpp"
#include "fenecpd/norms.hpp"
#include "fenecpd/state.hpp"

namespace fenecpd {

struct StepReport {
  int picard_iters = 0;
  double fp_residual = 0.0;           ///< last |r^{k+1} - r^k|_{L2}
  std::vector<double> residuals;      ///< one per Picard pass
  std::vector<LinearSolveReport> linear;
};

struct SolverOptions {
  LinearSolverOptions linear;
  int snapshot_every = 1;
};

/// Solves (M/dt + A) f = (M/dt) f_prev + load.
Vector solve_implicit_euler(const SparseMatrix& mass, const SparseMatrix& a, const Vector& f_prev,
                            double dt, const LinearSolverOptions& options,
                            LinearSolveReport& report, const Vector* load = nullptr);

/// Implicit Euler time stepping with Picard iteration on the frozen entropy
/// coefficient. Holds references to mesh and fields.
class Stepper {
 public:
  Stepper(const Mesh& mesh, const Params& params, const TemperatureField& theta,
          const FlowField& flow, SolverOptions options = {});

  /// One linearized solve with the entropy coefficient frozen at r,
  /// operators evaluated at time t.
  DensityState picard_map(const DensityState& f_prev, const DensityState& r, double t, double dt,
                          LinearSolveReport* report = nullptr);

  /// Advance f_n by dt. The Picard iteration starts from initial_guess
  /// (default f_n). load is an optional right-hand side at t + dt.
  /// Throws SolverError when max_picard is exceeded.
  DensityState step(const DensityState& f_n, double dt, StepReport& report,
                    const Vector* initial_guess = nullptr, const Vector* load = nullptr);

  const SparseMatrix& mass() const { return mass_; }
  const Assembler& assembler() const { return assembler_; }
  /// Static terms at time t (cached when the fields are time independent).
  const TermMatrices& static_terms(double t);
  /// A_h(t, r).
  SparseMatrix operator_at(double t, const DensityState& r);

 private:
  bool entropy_active() const;
  void prepare_linear(double t, double dt, const SparseMatrix& a);
  DensityState solve_frozen(const DensityState& f_prev, const DensityState& r, double t, double dt,
                            const Vector* load, LinearSolveReport& report);

  const Mesh* mesh_;
  Params params_;
  const TemperatureField* theta_;
  const FlowField* flow_;
  SolverOptions options_;
  Assembler assembler_;
  SparseMatrix mass_;
  std::optional<double> static_time_;
  TermMatrices static_;
  // factorization reuse when the system matrix does not depend on r
  LinearSolver linear_;
  std::optional<std::pair<double, double>> factored_for_;
};

struct Trajectory {
  std::vector<DensityState> snapshots;   ///< initial state first, final state last
  std::vector<std::size_t> snapshot_steps;
  std::vector<StepReport> steps;
  InvariantSeries series;                ///< every step, starting at t = 0
  double dt = 0.0;
};

/// Everything needed for one time integration.
struct RunSpec {
  const Mesh* mesh = nullptr;
  Params params;
  const TemperatureField* theta = nullptr;
  const FlowField* flow = nullptr;
  DensityState initial;
  SolverOptions options;
  /// Called after each accepted step (streaming output).
  std::function<void(std::size_t step, const DensityState&, const StepReport&)> on_step;
};

/// Raised by run(); carries the trajectory computed before the failure.
class RunError : public SolverError {
 public:
  RunError(const std::string& what, std::vector<double> residuals, Trajectory partial)
      : SolverError(what, std::move(residuals)), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Integrates from 0 to t_end with n = round(t_end/dt) uniform steps.
Trajectory run(const RunSpec& spec);

struct ContinuationResult {
  std::vector<double> eps;
  std::vector<Trajectory> runs;
  /// |f_{eps_i} - f_{eps_{i+1}}|_{L2(Sigma_T)}, trapezoid in time.
  std::vector<double> differences;
  std::optional<std::string> failure;
};

/// Runs spec for each eps of a strictly decreasing positive schedule.
/// Throws ValidationError for an invalid schedule; a failing run truncates
/// the table and is reported in failure.
ContinuationResult epsilon_continuation(const RunSpec& spec, const std::vector<double>& schedule);

/// Space-time L2 distance of two trajectories on the same time grid.
double space_time_l2_distance(const NormEvaluator& norms, const Trajectory& a, const Trajectory& b);

}  // namespace fenecpd
