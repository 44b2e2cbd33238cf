#include "fenecpd/solver.hpp"

#include <cmath>
#include <sstream>

namespace fenecpd {

Vector solve_implicit_euler(const SparseMatrix& mass, const SparseMatrix& a, const Vector& f_prev,
                            double dt, const LinearSolverOptions& options,
                            LinearSolveReport& report, const Vector* load) {
  SparseMatrix sys = mass / dt + a;
  LinearSolver solver(options);
  solver.compute(sys);
  Vector rhs = mass * f_prev / dt;
  if (load) rhs += *load;
  return solver.solve(rhs, &f_prev, report);
}

Stepper::Stepper(const Mesh& mesh, const Params& params, const TemperatureField& theta,
                 const FlowField& flow, SolverOptions options)
    : mesh_(&mesh),
      params_(params),
      theta_(&theta),
      flow_(&flow),
      options_(options),
      assembler_(mesh),
      linear_(options.linear) {
  params_.validate();
  if (theta.dx() != mesh.dx()) throw ValidationError("Stepper: temperature field dimension differs from the mesh");
  mass_ = assembler_.mass();
}

bool Stepper::entropy_active() const { return !theta_->spatially_constant(); }

const TermMatrices& Stepper::static_terms(double t) {
  // flow fields of the provided families are steady
  const double key = theta_->time_dependent() ? t : 0.0;
  if (!static_time_ || *static_time_ != key) {
    static_ = assembler_.assemble_static(params_, *theta_, *flow_, key);
    static_time_ = key;
  }
  return static_;
}

SparseMatrix Stepper::operator_at(double t, const DensityState& r) {
  const TermMatrices& s = static_terms(t);
  if (!entropy_active()) return compose_a_eps(s, EntropyMatrices{s.entropy_x, s.entropy_q});
  const double key = theta_->time_dependent() ? t : 0.0;
  return compose_a_eps(s, assembler_.assemble_entropy(params_, *theta_, key, r));
}

void Stepper::prepare_linear(double t, double dt, const SparseMatrix& a) {
  const double key = theta_->time_dependent() ? t : 0.0;
  if (!entropy_active() && factored_for_ && factored_for_->first == key &&
      factored_for_->second == dt)
    return;
  linear_.compute(add_same_pattern(a, mass_, 1.0 / dt));
  if (entropy_active())
    factored_for_.reset();
  else
    factored_for_ = std::make_pair(key, dt);
}

DensityState Stepper::solve_frozen(const DensityState& f_prev, const DensityState& r, double t,
                                   double dt, const Vector* load, LinearSolveReport& report) {
  if (static_cast<std::size_t>(f_prev.coeffs.size()) != mesh_->num_dofs() ||
      static_cast<std::size_t>(r.coeffs.size()) != mesh_->num_dofs())
    throw ValidationError("Stepper: state does not belong to this mesh");
  if (!(dt > 0.0)) throw ValidationError("Stepper: dt must be > 0");
  const double key = theta_->time_dependent() ? t : 0.0;
  const bool reuse = !entropy_active() && factored_for_ && factored_for_->first == key &&
                     factored_for_->second == dt;
  if (!reuse) prepare_linear(t, dt, operator_at(t, r));
  Vector rhs = mass_ * f_prev.coeffs / dt;
  if (load) rhs += *load;
  DensityState out;
  out.t = t;
  out.coeffs = linear_.solve(rhs, &r.coeffs, report);
  return out;
}

DensityState Stepper::picard_map(const DensityState& f_prev, const DensityState& r, double t,
                                 double dt, LinearSolveReport* report) {
  LinearSolveReport local;
  return solve_frozen(f_prev, r, t, dt, nullptr, report ? *report : local);
}

DensityState Stepper::step(const DensityState& f_n, double dt, StepReport& report,
                           const Vector* initial_guess, const Vector* load) {
  if (!f_n.coeffs.allFinite()) throw SolverError("step: current state is not finite");
  const double t1 = f_n.t + dt;
  report = StepReport{};
  DensityState r;
  r.t = t1;
  r.coeffs = initial_guess ? *initial_guess : f_n.coeffs;
  for (int k = 1; k <= params_.max_picard; ++k) {
    LinearSolveReport lin;
    DensityState next = solve_frozen(f_n, r, t1, dt, load, lin);
    report.linear.push_back(lin);
    const Vector d = next.coeffs - r.coeffs;
    const double res = std::sqrt(std::max(0.0, d.dot(mass_ * d)));
    report.residuals.push_back(res);
    report.picard_iters = k;
    report.fp_residual = res;
    if (!std::isfinite(res)) break;
    if (res <= params_.tol_fp) return next;
    r = std::move(next);
  }
  std::ostringstream os;
  os << "Picard iteration did not reach tol_fp = " << params_.tol_fp << " within "
     << params_.max_picard << " iterations at t = " << t1 << " (last residual "
     << report.fp_residual << ")";
  throw SolverError(os.str(), report.residuals);
}

Trajectory run(const RunSpec& spec) {
  if (!spec.mesh || !spec.theta || !spec.flow) throw ValidationError("run: incomplete RunSpec");
  spec.params.validate();
  const long n = std::lround(spec.params.t_end / spec.params.dt);
  const double dt = n > 0 ? spec.params.t_end / static_cast<double>(n) : spec.params.dt;
  const int every = std::max(1, spec.options.snapshot_every);

  Trajectory traj;
  traj.dt = dt;
  NormEvaluator norms(*spec.mesh);
  DensityState f = spec.initial;
  f.t = 0.0;
  traj.snapshots.push_back(f);
  traj.snapshot_steps.push_back(0);
  traj.series.push_back(norms.record(f));
  if (n == 0) return traj;

  Stepper stepper(*spec.mesh, spec.params, *spec.theta, *spec.flow, spec.options);
  for (long i = 0; i < n; ++i) {
    StepReport rep;
    try {
      f = stepper.step(f, dt, rep);
    } catch (const SolverError& e) {
      traj.steps.push_back(rep);
      std::vector<double> res = e.residuals();
      throw RunError(std::string("run: step ") + std::to_string(i + 1) + " failed: " + e.what(),
                     std::move(res), std::move(traj));
    }
    f.t = static_cast<double>(i + 1) * dt;
    traj.steps.push_back(rep);
    traj.series.push_back(norms.record(f));
    const auto step_no = static_cast<std::size_t>(i + 1);
    if (step_no % static_cast<std::size_t>(every) == 0 || i + 1 == n) {
      traj.snapshots.push_back(f);
      traj.snapshot_steps.push_back(step_no);
    }
    if (spec.on_step) spec.on_step(step_no, f, rep);
  }
  return traj;
}

double space_time_l2_distance(const NormEvaluator& norms, const Trajectory& a, const Trajectory& b) {
  if (a.snapshots.size() != b.snapshots.size())
    throw ValidationError("space_time_l2_distance: trajectories have different time grids");
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    if (std::abs(a.snapshots[k].t - b.snapshots[k].t) > 1e-12 * (1.0 + std::abs(a.snapshots[k].t)))
      throw ValidationError("space_time_l2_distance: snapshot times differ");
    const double d = norms.l2_norm(a.snapshots[k].coeffs - b.snapshots[k].coeffs);
    const double d2 = d * d;
    if (k > 0) sum += 0.5 * (a.snapshots[k].t - a.snapshots[k - 1].t) * (prev + d2);
    prev = d2;
  }
  return std::sqrt(sum);
}

ContinuationResult epsilon_continuation(const RunSpec& spec, const std::vector<double>& schedule) {
  if (schedule.size() < 2) throw ValidationError("epsilon_continuation: schedule needs at least two values");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0 && schedule[i] < 1.0))
      throw ValidationError("epsilon_continuation: every eps must lie in (0,1)");
    if (i > 0 && !(schedule[i] < schedule[i - 1]))
      throw ValidationError("epsilon_continuation: schedule must be strictly decreasing");
  }
  ContinuationResult out;
  NormEvaluator norms(*spec.mesh);
  for (double eps : schedule) {
    RunSpec s = spec;
    s.params.eps = eps;
    try {
      out.runs.push_back(run(s));
    } catch (const SolverError& e) {
      std::ostringstream os;
      os << "eps = " << eps << ": " << e.what();
      out.failure = os.str();
      break;
    }
    out.eps.push_back(eps);
    const std::size_t k = out.runs.size();
    if (k >= 2) out.differences.push_back(space_time_l2_distance(norms, out.runs[k - 2], out.runs[k - 1]));
  }
  return out;
}

}  // namespace fenecpd
