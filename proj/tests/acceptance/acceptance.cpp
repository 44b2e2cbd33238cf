// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance [criterion numbers...]  (default: all)

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "fenecpd/app.hpp"
#include "fenecpd/brownian.hpp"
#include "fenecpd/config.hpp"
#include "fenecpd/diagnostics.hpp"
#include "fenecpd/mms.hpp"
#include "fenecpd/regularization.hpp"
#include "fenecpd/solver.hpp"
#include "fenecpd/wellposedness.hpp"

using namespace fenecpd;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(FENECPD_SOURCE_DIR) / "configs";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

SimulationConfig load(const std::string& name) {
  std::ifstream in(kConfigs / name);
  if (!in) throw Error("cannot read " + (kConfigs / name).string());
  std::stringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
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

// Mesh and fields outlive the RunSpec that points at them.
struct Problem {
  SimulationConfig config;
  Mesh mesh;
  TemperatureField theta;
  FlowField flow;
  explicit Problem(SimulationConfig c)
      : config(std::move(c)),
        mesh(make_mesh(config)),
        theta(config.theta, config.mesh.dx),
        flow(config.flow, config.mesh.dx, config.mesh.dq) {}

  RunSpec spec() const {
    RunSpec s;
    s.mesh = &mesh;
    s.params = config.params;
    s.theta = &theta;
    s.flow = &flow;
    s.initial = initial_condition(mesh, config.params, theta, {config.initial_family, config.initial_theta0, {}});
    s.options = solver_options(config);
    return s;
  }
};

Outcome regularization_suite() {
  double worst_jump = 0.0, worst_bound = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    for (double b : {1.0 / eps, eps, 1.0 / std::log(eps)}) {
      const double left = g_eps(std::nextafter(b, -INFINITY), eps);
      const double right = g_eps(std::nextafter(b, INFINITY), eps);
      worst_jump = std::max({worst_jump, std::abs(left - right), std::abs(g_eps(b, eps) - left)});
    }
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      // symmetric log scan over 1e-8 .. 1e8 on both signs
      const double mag = std::pow(10.0, -8.0 + 16.0 * (i / 2) / (n / 2 - 1));
      const double z = i % 2 ? -mag : mag;
      worst_bound = std::max(worst_bound, std::abs(g_eps(z, eps)) / std::abs(std::log(eps)));
    }
  }
  const bool ends = entropy(0.0) == 0.0 && entropy(1.0) == 0.0;
  return {worst_jump <= 1e-12 && worst_bound <= 1.0 && ends,
          "max jump " + fmt(worst_jump) + ", max |g|/|ln eps| " + fmt(worst_bound) +
              ", E(0)=E(1)=0 " + (ends ? "yes" : "no")};
}

Outcome condition_audit() {
  const TemperatureField constant({}, 1);
  const TemperatureField affine({ThetaFamily::Affine, 1.0, {0.1, 0.0}, 0, 0}, 1);
  const double m1 = check_gradient_condition(constant, 1.0);
  const double m2 = check_gradient_condition(affine, 1.0);
  const double m3 = check_gradient_condition(affine, 20.0);
  const bool margins = std::abs(m1 - 1.0) <= 1e-12 && std::abs(m2 - 0.99) <= 1e-12 && std::abs(m3 + 3.0) <= 1e-12;
  double hardy[3], poincare[3];
  const int levels[3] = {32, 64, 128};
  for (int k = 0; k < 3; ++k) {
    const Mesh m = build_mesh(1, 1, levels[k], levels[k]);
    hardy[k] = estimate_hardy_constant(m).c_hardy;
    poincare[k] = estimate_poincare_constant(m);
  }
  const double dh = std::abs(hardy[2] - hardy[1]) / hardy[2];
  const double dp = std::abs(poincare[2] - poincare[1]) / poincare[2];
  return {margins && dh < 0.02 && dp < 0.02,
          "margins " + fmt(m1) + ", " + fmt(m2) + ", " + fmt(m3) + "; Hardy " + fmt(hardy[1]) + " -> " +
              fmt(hardy[2]) + " (" + fmt(100 * dh) + "%), Poincare " + fmt(poincare[1]) + " -> " +
              fmt(poincare[2]) + " (" + fmt(100 * dp) + "%)"};
}

SparseMatrix symmetric_part(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  return SparseMatrix(0.5 * (a + at));
}

Outcome discrete_coercivity() {
  Params p;
  p.q0 = 0.2;
  p.eps = 0.1;
  const TemperatureField theta({ThetaFamily::Affine, 1.0, {0.1, 0.0}, 0, 0}, 1);
  const FlowField flow({}, 1, 1);
  bool pass = true;
  std::ostringstream os;
  for (int n : {16, 32, 64, 128}) {
    const Mesh m = build_mesh(1, 1, n, n);
    const CoercivityReport rep = audit(m, p, theta);
    if (!rep.lambda_m || !rep.lambda_M) return {false, "margins not positive at n=" + std::to_string(n)};
    const Assembler as(m);
    const TermMatrices terms = as.assemble_static(p, theta, flow, 0.0);
    const SparseMatrix g = add_same_pattern(add_same_pattern(as.mass(), as.stiffness_x()), as.stiffness_q());
    const SparseMatrix b = symmetric_part(terms.b_form());
    const SparseMatrix bf = symmetric_part(add_same_pattern(terms.b_form(), terms.fene));
    const double lo_b = smallest_generalized_eigenvalue(b, g).value;
    const double lo_bf = smallest_generalized_eigenvalue(bf, g).value;
    const double rb = lo_b / *rep.lambda_m, rbf = lo_bf / *rep.lambda_M;
    pass = pass && rb >= 0.95 && rbf >= 0.95;
    os << (n == 16 ? "" : "; ") << n + 1 << " nodes: " << fmt(rb) << ", " << fmt(rbf);
  }
  return {pass, "ratio to lambda_m, Lambda_M: " + os.str()};
}

Outcome assembly_oracle() {
  using namespace fenecpd::testing;
  const OracleData d{1.3, 0.7, 0.1, 0.25, 0.8, 1.0, 1.0, 0.1, 0.05, 0.0, 0.0};
  const OracleComparison c = compare_with_oracle(d, {ThetaFamily::Affine, 1.0, {0.1, 0.05}, 0, 0});
  return {c.dofs <= 125 && c.max_difference <= 1e-12,
          std::to_string(c.dofs) + " DOFs, max |A_sparse - A_dense| " + fmt(c.max_difference) +
              " (entries up to " + fmt(c.scale) + ")"};
}

struct SteadyResult {
  Outcome outcome;
  Vector terminal;
};

SteadyResult steady_state() {
  const Problem pr(load("steady.toml"));
  const Trajectory t = run(pr.spec());
  const NormEvaluator ne(pr.mesh);
  const DensityState eq = analytic_steady_state(pr.config.theta.theta0, pr.config.params.q0, pr.mesh);
  const Vector& last = t.snapshots.back().coeffs;
  const double shape = relative_l2_distance(ne, last / discrete_integral(pr.mesh, last), eq.coeffs);
  const double raw = relative_l2_distance(ne, last, eq.coeffs);
  return {{shape <= 0.02, "t=" + fmt(t.snapshots.back().t) + ", n_q=" + std::to_string(pr.config.mesh.n_q) +
                              ", relative L2 to unit-mass f_eq " + fmt(shape) + " (without mass rescaling " +
                              fmt(raw) + ", mass " + fmt(t.series.back().mass) + ")"},
          last};
}

Outcome invariant_suite() {
  SimulationConfig coarse = load("noniso_shear.toml");
  SimulationConfig fine = coarse;
  fine.mesh.n_x *= 2;
  fine.mesh.n_q *= 2;
  double neg_fraction[2];
  bool pass = true;
  std::ostringstream os;
  int k = 0;
  for (const SimulationConfig& c : {coarse, fine}) {
    const Problem pr(c);
    Trajectory t = run(pr.spec());
    const CoercivityReport rep = audit(pr.mesh, c.params, pr.theta);
    if (!rep.lambda_m || !rep.lambda_M) return {false, "margins not positive"};
    const L1Report l1 = check_l1_bound(t.series);
    const EnergyReport en = check_energy(t.series, t.dt, rep);
    const PositivityReport pos = check_positivity(t.series);
    neg_fraction[k] = pos.worst_neg_fraction;
    pass = pass && l1.worst_ratio <= 1.001 && en.min_slack >= 0.0 && pos.worst_neg_fraction <= 1e-3;
    os << (k ? "; " : "") << "n=" << c.mesh.n_x << ": L1 ratio " << fmt(l1.worst_ratio) << ", min energy slack "
       << fmt(en.min_slack) << ", negative mass fraction " << fmt(pos.worst_neg_fraction);
    ++k;
  }
  // no negative part at either level leaves nothing to shrink
  const bool shrink = (neg_fraction[0] == 0.0 && neg_fraction[1] == 0.0) || neg_fraction[0] >= 1.5 * neg_fraction[1];
  os << "; negative-mass shrink " << (neg_fraction[1] > 0.0 ? fmt(neg_fraction[0] / neg_fraction[1]) : std::string("n/a (zero)"));
  return {pass && shrink, os.str()};
}

double last_order(const MmsResult& r) { return r.orders.back(); }

MmsSetup mms_setup(const SimulationConfig& c) {
  MmsSetup s;
  s.problem = c.mms.problem;
  s.params = c.params;
  s.theta = c.theta;
  s.flow = c.flow;
  s.dx = c.mesh.dx;
  s.dq = c.mesh.dq;
  s.quad_order = c.mesh.quad_order;
  return s;
}

Outcome mms_orders() {
  const SimulationConfig diff = load("mms_diffusion.toml");
  const SimulationConfig full = load("mms_full.toml");
  const MmsResult rd = mms_study(mms_setup(diff), diff.mms.levels);
  const MmsResult rf = mms_study(mms_setup(full), full.mms.levels);
  MmsSetup st = mms_setup(diff);
  st.profile = TimeProfile::Exponential;
  st.params.t_end = diff.mms.temporal_t_end;
  st.params.dt = diff.mms.temporal_dts.front();
  const MmsResult rt = mms_temporal_study(st, diff.mms.temporal_n, diff.mms.temporal_dts);
  const double od = last_order(rd), of = last_order(rf), ot = last_order(rt);
  return {od >= 1.8 && of >= 1.5 && ot >= 0.9,
          "diffusion " + fmt(od) + ", full " + fmt(of) + ", temporal " + fmt(ot)};
}

Outcome fixed_point() {
  const Problem pr(load("noniso_shear.toml"));
  const RunSpec spec = pr.spec();
  Stepper stepper(pr.mesh, spec.params, pr.theta, pr.flow, spec.options);
  const NormEvaluator ne(pr.mesh);
  const double dt = spec.params.dt;
  const auto steps = static_cast<std::size_t>(std::llround(spec.params.t_end / dt));
  DensityState f = spec.initial;
  const Vector other_guess = analytic_steady_state(1.0, spec.params.q0, pr.mesh).coeffs * 2.0;
  double worst_agreement = 0.0;
  std::size_t violations = 0, max_iters = 0;
  for (std::size_t n = 0; n < steps; ++n) {
    StepReport a, b;
    const DensityState fa = stepper.step(f, dt, a);
    const DensityState fb = stepper.step(f, dt, b, &other_guess);
    for (const StepReport* r : {&a, &b}) {
      max_iters = std::max<std::size_t>(max_iters, r->residuals.size());
      for (std::size_t k = 1; k < r->residuals.size(); ++k)
        if (!(r->residuals[k] < r->residuals[k - 1])) ++violations;
    }
    worst_agreement = std::max(worst_agreement, ne.l2_norm(fa.coeffs - fb.coeffs));
    f = fa;
  }
  const double tol = 10.0 * spec.params.tol_fp;
  return {violations == 0 && worst_agreement <= tol,
          std::to_string(steps) + " steps, non-decreasing residual pairs " + std::to_string(violations) +
              ", up to " + std::to_string(max_iters) + " iterations, max guess disagreement " +
              fmt(worst_agreement) + " (limit " + fmt(tol) + ")"};
}

Outcome continuation() {
  const Problem pr(load("continuation.toml"));
  const ContinuationResult r = epsilon_continuation(pr.spec(), pr.config.continuation.schedule);
  if (r.failure) return {false, "run failed: " + *r.failure};
  bool monotone = r.differences.size() + 1 == pr.config.continuation.schedule.size();
  std::ostringstream os;
  for (std::size_t k = 0; k < r.differences.size(); ++k) {
    if (k > 0 && !(r.differences[k] < r.differences[k - 1])) monotone = false;
    os << (k ? ", " : "") << fmt(r.differences[k]);
  }
  return {monotone, "differences " + os.str()};
}

Outcome brownian(const Vector& pde_terminal) {
  const SimulationConfig c = load("bd.toml");
  const SimulationConfig steady = load("steady.toml");
  const Mesh mesh = make_mesh(c);
  BdSetup s;
  s.de = c.params.de;
  s.q0 = c.params.q0;
  s.theta0 = c.theta.theta0;
  s.particles = static_cast<std::size_t>(c.bd.particles);
  s.dt = c.bd.dt;
  s.t_end = c.bd.t_end;
  s.seed = static_cast<std::uint64_t>(c.bd.seed);
  const BdResult r = bd_oracle(s, mesh);
  const double tv_eq = tv_distance(r.histogram, equilibrium_histogram(mesh, s.theta0, s.q0));
  if (!(steady.mesh == c.mesh)) return {false, "bd and steady configurations use different meshes"};
  const double tv_pde = tv_distance(r.histogram, q_histogram(mesh, pde_terminal));
  return {tv_eq <= 0.05 && tv_pde <= 0.05 && r.discarded_fraction < 1e-3,
          std::to_string(s.particles) + " particles, TV to f_eq " + fmt(tv_eq) + ", TV to PDE terminal state " +
              fmt(tv_pde) + ", discarded " + fmt(r.discarded_fraction)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::current_path() / "acceptance_determinism";
  fs::remove_all(root);
  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const char* name : {"steady.toml", "noniso_shear.toml", "mms_diffusion.toml", "mms_full.toml",
                           "continuation.toml", "bd.toml"}) {
    SimulationConfig c = load(name);
    const std::string stem = fs::path(name).stem().string();
    for (const char* run : {"a", "b"}) {
      c.output.dir = (root / run / stem).string();
      std::ostringstream log;
      if (execute(c, {}, log) != kExitOk) return {false, std::string(name) + " failed: " + log.str()};
    }
    for (const auto& e : fs::recursive_directory_iterator(root / "a" / stem)) {
      if (!e.is_regular_file()) continue;
      const fs::path rel = fs::relative(e.path(), root / "a");
      ++compared;
      if (slurp(e.path()) != slurp(root / "b" / rel)) differing.push_back(rel.string());
    }
  }
  std::string detail = std::to_string(compared) + " files compared";
  for (const auto& d : differing) detail += ", differs: " + d;
  return {differing.empty() && compared > 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  auto wanted = [&](int k) { return only.empty() || only.count(k) > 0; };

  Vector pde_terminal;
  const std::vector<std::pair<double, std::function<Outcome()>>> criteria = {
      {1.0, regularization_suite},
      {30.0, condition_audit},
      {60.0, discrete_coercivity},
      {60.0, assembly_oracle},
      {60.0,
       [&] {
         SteadyResult r = steady_state();
         pde_terminal = std::move(r.terminal);
         return r.outcome;
       }},
      {300.0, invariant_suite},
      {600.0, mms_orders},
      {300.0, fixed_point},
      {900.0, continuation},
      {120.0,
       [&] {
         if (pde_terminal.size() == 0) pde_terminal = steady_state().terminal;
         return brownian(pde_terminal);
       }},
      {std::numeric_limits<double>::infinity(), determinism},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!wanted(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double budget = criteria[k].first;
    if (secs > budget) {
      o.pass = false;
      o.detail += "; runtime over budget " + fmt(budget) + " s";
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  [" << fmt(secs)
              << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
