#include "fenecpd/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fenecpd/brownian.hpp"
#include "fenecpd/diagnostics.hpp"
#include "fenecpd/io.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/mms.hpp"
#include "fenecpd/solver.hpp"
#include "fenecpd/wellposedness.hpp"

namespace fs = std::filesystem;

namespace fenecpd {

namespace {

struct Context {
  const SimulationConfig& config;
  const AppOptions& options;
  std::ostream& log;
  fs::path out_dir;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

Mesh make_mesh(const SimulationConfig& c) {
  MeshOptions mo;
  mo.x_periodic = c.mesh.x_periodic;
  return build_mesh(c.mesh.dx, c.mesh.dq, c.mesh.n_x, c.mesh.n_q, c.mesh.quad_order, mo);
}

SolverOptions solver_options(const SimulationConfig& c) {
  SolverOptions so;
  so.linear.tolerance = c.params.tol_lin;
  so.linear.max_iterations = c.solver.max_linear_iterations;
  so.linear.direct_max_dofs = static_cast<std::size_t>(c.solver.direct_max_dofs);
  so.snapshot_every = c.output.snapshot_every;
  return so;
}

void write_report(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
}

void append_coercivity(std::ostringstream& os, const CoercivityReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string("n/a"); };
  os << "[coercivity]\n"
     << "theta_min = " << num(r.theta_min) << "\n"
     << "grad_theta_sup = " << num(r.grad_theta_sup) << "\n"
     << "margin_weak = " << num(r.margin_weak) << "  (theta_min^2 - q0^2 |grad theta|^2, "
     << (r.margin_weak > 0 ? "holds" : "fails") << ")\n"
     << "c_hardy = " << num(r.c_hardy) << "  (n_q = " << r.hardy_n_q << ")\n"
     << "margin_strong = " << num(r.margin_strong)
     << "  (theta_min^2/q0^2 - 2 c_H theta_min - |grad theta|^2, "
     << (r.margin_strong > 0 ? "holds" : "fails") << ")\n"
     << "c_poincare = " << num(r.c_poincare) << "\n"
     << "lambda_m_tilde = " << opt(r.lambda_m_tilde) << "\n"
     << "lambda_m = " << opt(r.lambda_m) << "  (lambda_m_tilde / (1 + c_poincare^2))\n"
     << "lambda_M_tilde = " << opt(r.lambda_M_tilde) << "\n"
     << "lambda_M = " << opt(r.lambda_M) << "\n";
}

InitialSpec initial_spec(const Context& ctx, const Mesh& mesh) {
  InitialSpec spec;
  spec.family = ctx.config.initial_family;
  spec.theta0 = ctx.config.initial_theta0;
  if (spec.family == InitialFamily::CustomNodal) {
    fs::path p = ctx.config.initial_values_file;
    if (p.is_relative() && !ctx.options.base_dir.empty()) p = fs::path(ctx.options.base_dir) / p;
    const SnapshotData d = read_snapshot_csv(p);
    if (static_cast<std::size_t>(d.values.size()) != mesh.num_dofs())
      throw ValidationError("initial values file has " + std::to_string(d.values.size()) +
                            " values, the mesh has " + std::to_string(mesh.num_dofs()) + " DOFs");
    spec.nodal.assign(d.values.data(), d.values.data() + d.values.size());
  }
  return spec;
}

void write_trajectory(const Context& ctx, const Mesh& mesh, const Trajectory& traj) {
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const fs::path base = ctx.out_dir / "snapshots" / ("f_" + std::to_string(k));
    write_snapshot_csv(base.string() + ".csv", mesh, traj.snapshots[k], k);
    if (ctx.config.output.write_f64) write_f64(base.string() + ".f64", mesh, traj.snapshots[k].coeffs);
  }
  write_diagnostics_csv(ctx.out_dir / "diagnostics.csv", traj.series);
  write_steps_csv(ctx.out_dir / "steps.csv", traj);
}

void append_invariants(std::ostringstream& os, Trajectory& traj, const CoercivityReport& audit_report) {
  const L1Report l1 = check_l1_bound(traj.series);
  const PositivityReport pos = check_positivity(traj.series);
  const EnergyReport en = check_energy(traj.series, traj.dt, audit_report);
  const auto& first = traj.series.front();
  const auto& last = traj.series.back();
  os << "[invariants]\n"
     << "l1_worst_ratio = " << num(l1.worst_ratio) << "  (" << (l1.pass ? "pass" : "fail") << ")\n"
     << "min_value = " << num(pos.min_value) << "\n"
     << "worst_negative_fraction = " << num(pos.worst_neg_fraction) << "\n"
     << "energy_c1 = " << num(en.c1) << "\n"
     << "energy_c2 = " << num(en.c2) << "\n"
     << "energy_min_slack = " << num(en.min_slack) << "  (" << (en.pass ? "pass" : "fail") << ")\n"
     << "mass_initial = " << num(first.mass) << "\n"
     << "mass_final = " << num(last.mass) << "\n";
  int max_picard = 0;
  for (const auto& s : traj.steps) max_picard = std::max(max_picard, s.picard_iters);
  os << "steps = " << traj.steps.size() << "\nmax_picard_iterations = " << max_picard << "\n";
}

int mode_check(Context& ctx) {
  const SimulationConfig& c = ctx.config;
  const Mesh mesh = make_mesh(c);
  const TemperatureField theta(c.theta, c.mesh.dx);
  const FlowField flow(c.flow, c.mesh.dx, c.mesh.dq);
  const CoercivityReport r = audit(mesh, c.params, theta);
  std::ostringstream os;
  os << "mode = check\ndofs = " << mesh.num_dofs() << "\n";
  append_coercivity(os, r);
  if (auto w = flow.consistency_warning()) os << "warning = " << *w << "\n";
  write_report(ctx.out_dir / "report.txt", os.str());
  ctx.log << os.str();
  return kExitOk;
}

// Returns an exit code when the audit forbids the run.
std::optional<int> gate(Context& ctx, const CoercivityReport& r) {
  if (ctx.options.allow_unverified || ctx.config.solver.allow_unverified) return std::nullopt;
  if (!(r.margin_weak > 0.0)) {
    ctx.log << "error: weak coercivity condition theta_min^2 > q0^2 |grad theta|^2 fails (margin "
            << num(r.margin_weak) << "); pass --allow-unverified to run anyway\n";
    return kExitValidation;
  }
  if (!(r.margin_strong > 0.0)) {
    ctx.log << "error: strong condition theta_min^2/q0^2 - 2 c_H theta_min - |grad theta|^2 > 0 "
               "fails (margin "
            << num(r.margin_strong) << "); pass --allow-unverified to run anyway\n";
    return kExitValidation;
  }
  return std::nullopt;
}

int mode_run(Context& ctx, bool steady) {
  const SimulationConfig& c = ctx.config;
  const Mesh mesh = make_mesh(c);
  const TemperatureField theta(c.theta, c.mesh.dx);
  const FlowField flow(c.flow, c.mesh.dx, c.mesh.dq);
  if (auto w = flow.consistency_warning()) ctx.log << "warning: " << *w << "\n";
  const CoercivityReport r = audit(mesh, c.params, theta);
  if (!steady)
    if (auto code = gate(ctx, r)) return *code;

  RunSpec spec;
  spec.mesh = &mesh;
  spec.params = c.params;
  spec.theta = &theta;
  spec.flow = &flow;
  spec.initial = initial_condition(mesh, c.params, theta, initial_spec(ctx, mesh));
  spec.options = solver_options(c);

  std::ostringstream os;
  os << "mode = " << to_string(c.mode) << "\ndofs = " << mesh.num_dofs() << "\n";
  append_coercivity(os, r);
  Trajectory traj;
  try {
    traj = run(spec);
  } catch (const RunError& e) {
    Trajectory partial = e.partial();
    write_trajectory(ctx, mesh, partial);
    os << "[failure]\nmessage = " << e.what() << "\n";
    write_report(ctx.out_dir / "report.txt", os.str());
    ctx.log << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  append_invariants(os, traj, r);
  if (steady) {
    const DensityState eq = analytic_steady_state(c.theta.theta0, c.params.q0, mesh);
    const NormEvaluator norms(mesh);
    const Vector& last = traj.snapshots.back().coeffs;
    const Vector shape = last / discrete_integral(mesh, last);
    os << "[steady]\nrelative_l2_to_equilibrium = " << num(relative_l2_distance(norms, last, eq.coeffs))
       << "\nrelative_l2_shape_to_equilibrium = " << num(relative_l2_distance(norms, shape, eq.coeffs))
       << "  (unit-mass rescaled)\n";
  }
  write_trajectory(ctx, mesh, traj);
  write_report(ctx.out_dir / "report.txt", os.str());
  ctx.log << os.str();
  return kExitOk;
}

void append_mms_table(std::ostringstream& os, const MmsResult& r, bool temporal) {
  os << (temporal ? "dt" : "n") << ",h,dt,l2_error,observed_order\n";
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    os << (temporal ? num(lv.dt) : std::to_string(lv.n)) << "," << num(lv.h) << "," << num(lv.dt)
       << "," << num(lv.error) << "," << (k == 0 ? std::string("-") : num(r.orders[k - 1])) << "\n";
  }
}

int mode_mms(Context& ctx) {
  const SimulationConfig& c = ctx.config;
  MmsSetup s;
  s.problem = c.mms.problem;
  s.params = c.params;
  s.theta = c.theta;
  s.flow = c.flow;
  s.dx = c.mesh.dx;
  s.dq = c.mesh.dq;
  s.quad_order = c.mesh.quad_order;
  s.profile = TimeProfile::Linear;
  const MmsResult spatial = mms_study(s, c.mms.levels);
  MmsSetup st = s;
  st.profile = TimeProfile::Exponential;
  st.params.t_end = c.mms.temporal_t_end;
  st.params.dt = c.mms.temporal_dts.front();
  const MmsResult temporal = mms_temporal_study(st, c.mms.temporal_n, c.mms.temporal_dts);
  std::ostringstream os;
  os << "mode = mms\nproblem = " << to_string(s.problem) << "\n[spatial]\n";
  append_mms_table(os, spatial, false);
  os << "[temporal]\n";
  append_mms_table(os, temporal, true);
  write_report(ctx.out_dir / "report.txt", os.str());
  ctx.log << os.str();
  return kExitOk;
}

int mode_continuation(Context& ctx) {
  const SimulationConfig& c = ctx.config;
  const Mesh mesh = make_mesh(c);
  const TemperatureField theta(c.theta, c.mesh.dx);
  const FlowField flow(c.flow, c.mesh.dx, c.mesh.dq);
  const CoercivityReport r = audit(mesh, c.params, theta);
  if (auto code = gate(ctx, r)) return *code;
  RunSpec spec;
  spec.mesh = &mesh;
  spec.params = c.params;
  spec.theta = &theta;
  spec.flow = &flow;
  spec.initial = initial_condition(mesh, c.params, theta, initial_spec(ctx, mesh));
  spec.options = solver_options(c);
  const ContinuationResult res = epsilon_continuation(spec, c.continuation.schedule);
  std::ostringstream os;
  os << "mode = continuation\ndofs = " << mesh.num_dofs() << "\n[cauchy]\neps,eps_next,space_time_l2\n";
  for (std::size_t k = 0; k < res.differences.size(); ++k)
    os << num(res.eps[k]) << "," << num(res.eps[k + 1]) << "," << num(res.differences[k]) << "\n";
  for (std::size_t k = 0; k < res.runs.size(); ++k)
    write_diagnostics_csv(ctx.out_dir / ("diagnostics_eps_" + std::to_string(k) + ".csv"),
                          res.runs[k].series);
  if (!res.runs.empty()) {
    const Trajectory& last = res.runs.back();
    write_snapshot_csv(ctx.out_dir / "snapshots" / "f_final.csv", mesh, last.snapshots.back(),
                       last.snapshots.size() - 1);
  }
  if (res.failure) os << "[failure]\nmessage = " << *res.failure << "\n";
  write_report(ctx.out_dir / "report.txt", os.str());
  ctx.log << os.str();
  return res.failure ? kExitSolver : kExitOk;
}

int mode_bd(Context& ctx) {
  const SimulationConfig& c = ctx.config;
  const Mesh mesh = make_mesh(c);
  BdSetup s;
  s.de = c.params.de;
  s.q0 = c.params.q0;
  s.theta0 = c.theta.theta0;
  switch (c.flow.kappa) {
    case KappaKind::None: s.kappa = 0.0; break;
    case KappaKind::SimpleShear:
      if (c.mesh.dq != 1) throw ValidationError("bd: simple shear is supported for dq = 1 only");
      s.kappa = 0.5 * c.flow.rate;
      break;
    case KappaKind::Extensional: s.kappa = c.flow.rate; break;
    case KappaKind::VelocityGradient:
      throw ValidationError("bd: kappa = velocity-gradient is not supported");
  }
  s.particles = static_cast<std::size_t>(c.bd.particles);
  s.dt = c.bd.dt;
  s.t_end = c.bd.t_end;
  s.seed = static_cast<std::uint64_t>(c.bd.seed);
  const BdResult r = bd_oracle(s, mesh);
  std::ostringstream os;
  os << "mode = bd\nparticles = " << s.particles << "\ndiscarded = " << r.discarded
     << "\ndiscarded_fraction = " << num(r.discarded_fraction) << "\noutside_mesh = " << r.outside << "\n";
  std::ofstream hist;
  fs::create_directories(ctx.out_dir);
  hist.open(ctx.out_dir / "histogram.csv", std::ios::trunc);
  if (!hist) throw Error("cannot write histogram.csv");
  if (s.kappa == 0.0) {
    const auto eq = equilibrium_histogram(mesh, s.theta0, s.q0);
    os << "tv_to_equilibrium = " << num(tv_distance(r.histogram, eq)) << "\n";
    hist << (mesh.dq() == 1 ? "q_lower" : "q1_lower,q2_lower") << ",bd,equilibrium\n";
    for (std::size_t k = 0; k < eq.size(); ++k) {
      const auto& cell = mesh.q_cells()[k];
      hist << format_double(cell.lower[0]) << ","
           << (mesh.dq() == 2 ? format_double(cell.lower[1]) + "," : std::string())
           << format_double(r.histogram[k]) << "," << format_double(eq[k]) << "\n";
    }
  } else {
    hist << (mesh.dq() == 1 ? "q_lower" : "q1_lower,q2_lower") << ",bd\n";
    for (std::size_t k = 0; k < r.histogram.size(); ++k) {
      const auto& cell = mesh.q_cells()[k];
      hist << format_double(cell.lower[0]) << ","
           << (mesh.dq() == 2 ? format_double(cell.lower[1]) + "," : std::string())
           << format_double(r.histogram[k]) << "\n";
    }
  }
  write_report(ctx.out_dir / "report.txt", os.str());
  ctx.log << os.str();
  if (r.discarded_fraction >= 1e-3) {
    ctx.log << "error: discarded fraction " << num(r.discarded_fraction) << " exceeds 0.1%\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

int execute(const SimulationConfig& config, const AppOptions& options, std::ostream& log) {
  Context ctx{config, options, log, fs::path(config.output.dir)};
  try {
    if (const auto issues = validate_config(config); !issues.empty()) {
      for (const auto& i : issues) log << "error: " << i << "\n";
      return kExitValidation;
    }
    switch (config.mode) {
      case Mode::Check: return mode_check(ctx);
      case Mode::Run: return mode_run(ctx, false);
      case Mode::Steady: return mode_run(ctx, true);
      case Mode::Mms: return mode_mms(ctx);
      case Mode::Continuation: return mode_continuation(ctx);
      case Mode::Bd: return mode_bd(ctx);
    }
  } catch (const SolverError& e) {
    log << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-isothermal FENE configurational diffusion solver"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  bool allow_unverified = false;
  std::string output_dir;
  for (const char* name : {"run", "check", "steady", "mms", "continuation", "bd"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--override", overrides, "section.key=value applied after the file");
    sub->add_flag("--allow-unverified", allow_unverified, "run even when a solvability margin fails");
    sub->add_option("--output", output_dir, "output directory (overrides output.dir)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  std::ifstream in(config_path);
  if (!in) {
    err << "error: cannot read config '" << config_path << "'\n";
    return kExitValidation;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  SimulationConfig config;
  try {
    config = parse_config(buf.str(), overrides);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  mode_from_string(sub, config.mode);
  if (!output_dir.empty()) config.output.dir = output_dir;
  AppOptions opts;
  opts.allow_unverified = allow_unverified;
  opts.base_dir = fs::path(config_path).parent_path().string();
  std::ostringstream log;
  const int code = execute(config, opts, log);
  (code == kExitOk ? out : err) << log.str();
  return code;
}

}  // namespace fenecpd
