#include "fenecpd/mms.hpp"

#include <cmath>
#include <numbers>

#include "fenecpd/assembly.hpp"
#include "fenecpd/error.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/regularization.hpp"
#include "fenecpd/solver.hpp"

namespace fenecpd {

std::string to_string(MmsProblem p) { return p == MmsProblem::Diffusion ? "diffusion" : "full"; }
std::string to_string(TimeProfile p) { return p == TimeProfile::Linear ? "linear" : "exponential"; }

namespace {

constexpr double kPi = std::numbers::pi;

ThetaSpec effective_theta(const MmsSetup& s) {
  if (s.problem == MmsProblem::Full) return s.theta;
  ThetaSpec t;
  t.family = ThetaFamily::Constant;
  t.theta0 = s.theta.theta0;
  return t;
}

FlowSpec effective_flow(const MmsSetup& s) {
  return s.problem == MmsProblem::Full ? s.flow : FlowSpec{};
}

double tau(TimeProfile p, double t) { return p == TimeProfile::Linear ? 1.0 + t : std::exp(-2.0 * t); }
double tau_dot(TimeProfile p, double t) {
  return p == TimeProfile::Linear ? 1.0 : -2.0 * std::exp(-2.0 * t);
}

// Manufactured density and its gradient (x first, then q).
struct Exact {
  int dx, dq;
  TimeProfile profile;

  double value(const double* p, double t) const {
    double q2 = 0.0;
    for (int k = 0; k < dq; ++k) q2 += p[dx + k] * p[dx + k];
    double s = 1.0;
    for (int k = 0; k < dx; ++k) s *= std::sin(kPi * p[k]);
    const double w = 1.0 - q2;
    return w * w * s * tau(profile, t);
  }

  void gradient(const double* p, double t, double* g) const {
    double q2 = 0.0;
    for (int k = 0; k < dq; ++k) q2 += p[dx + k] * p[dx + k];
    const double w = 1.0 - q2;
    const double tt = tau(profile, t);
    double sn[2] = {1.0, 1.0}, cs[2] = {0.0, 0.0};
    for (int k = 0; k < dx; ++k) {
      sn[k] = std::sin(kPi * p[k]);
      cs[k] = std::cos(kPi * p[k]);
    }
    const double s = sn[0] * sn[1];
    for (int k = 0; k < dx; ++k) {
      double d = kPi * cs[k];
      for (int m = 0; m < dx; ++m)
        if (m != k) d *= sn[m];
      g[k] = w * w * d * tt;
    }
    for (int k = 0; k < dq; ++k) g[dx + k] = -4.0 * w * p[dx + k] * s * tt;
  }
};

// Flux pair of the divergence form: L f = v . grad_x f - div_x Jx - div_q Jq.
struct Operator {
  const MmsSetup* setup;
  TemperatureField theta;
  FlowField flow;
  Exact exact;

  Operator(const MmsSetup& s)
      : setup(&s),
        theta(effective_theta(s), s.dx),
        flow(effective_flow(s), s.dx, s.dq),
        exact{s.dx, s.dq, s.profile} {}

  void fluxes(const double* p, double t, double* jx, double* jq) const {
    const int dx = exact.dx, dq = exact.dq, mm = std::min(dx, dq);
    const Params& pr = setup->params;
    const double inv_de = 1.0 / pr.de;
    const double xdiff = pr.strong_form_halved_xdiff ? 0.5 * inv_de : inv_de;
    const Vec2 x{p[0], dx == 2 ? p[1] : 0.0};
    double q[2] = {0.0, 0.0};
    for (int k = 0; k < dq; ++k) q[k] = p[dx + k];
    const double th = theta.value(x, t);
    const Vec2 gth = theta.gradient(x, t);
    const Mat2 hth = theta.hessian(x, t);
    const Mat2 kap = flow.kappa(x, t);
    const double f = exact.value(p, t);
    double g[kMaxDim];
    exact.gradient(p, t, g);
    double c = 0.0;
    for (int k = 0; k < mm; ++k) c += q[k] * gth[k];
    c *= inv_de;
    const double ent = e_eps(f, pr.eps) * inv_de;
    for (int k = 0; k < dx; ++k) {
      jx[k] = xdiff * th * g[k] + ent * gth[k];
      if (k < mm) jx[k] += c * g[dx + k];
    }
    const double fene = 2.0 * inv_de / (pr.eps + 1.0 - q[0] * q[0] - q[1] * q[1]);
    for (int k = 0; k < dq; ++k) {
      double kq = 0.0;
      for (int l = 0; l < dq; ++l) kq += kap[k][l] * q[l];
      double hq = 0.0;
      if (k < mm)
        for (int l = 0; l < mm; ++l) hq += hth[k][l] * q[l];
      jq[k] = th * inv_de / (pr.q0 * pr.q0) * g[dx + k] + ent * hq - kq * f + fene * q[k] * f;
      if (k < mm) jq[k] += c * g[k];
    }
  }

  double forcing(const double* p, double t) const {
    const int dim = exact.dx + exact.dq, dx = exact.dx;
    const double h = setup->fd_step;
    double g[kMaxDim];
    exact.gradient(p, t, g);
    const Vec2 x{p[0], dx == 2 ? p[1] : 0.0};
    const Vec2 v = flow.has_velocity() ? flow.velocity(x, t) : Vec2{0.0, 0.0};
    double out = exact.value(p, 0.0) / tau(exact.profile, 0.0) * tau_dot(exact.profile, t);
    for (int k = 0; k < dx; ++k) out += v[k] * g[k];
    // divergence of the flux by fourth-order central differences
    double pt[kMaxDim];
    double jx[2], jq[2];
    for (int k = 0; k < dim; ++k) {
      const double offs[4] = {-2.0 * h, -h, h, 2.0 * h};
      const double coef[4] = {1.0, -8.0, 8.0, -1.0};
      double d = 0.0;
      for (int s = 0; s < 4; ++s) {
        for (int m = 0; m < dim; ++m) pt[m] = p[m];
        pt[k] += offs[s];
        fluxes(pt, t, jx, jq);
        d += coef[s] * (k < dx ? jx[k] : jq[k - dx]);
      }
      out -= d / (12.0 * h);
    }
    return out;
  }
};

void validate_setup(const MmsSetup& s) {
  if (s.dq != 1)
    throw ValidationError(
        "mms: dq must be 1; the manufactured density does not vanish on the staircase boundary of "
        "the masked ball");
  if (s.dx != 1 && s.dx != 2) throw ValidationError("mms: dx must be 1 or 2");
  if (!(s.fd_step > 0.0) || s.fd_step > 1e-1) throw ValidationError("mms: fd_step must lie in (0, 0.1]");
  s.params.validate();
}

double l2_error(const Mesh& mesh, const Vector& f, const Exact& exact, double t) {
  const ReferenceElement& ref = mesh.reference();
  const int nl = mesh.num_local(), dim = mesh.dim();
  double sum = 0.0;
  double pt[kMaxDim];
  for (const Cell& c : mesh.cells()) {
    for (int p = 0; p < ref.num_points(); ++p) {
      for (int k = 0; k < dim; ++k) pt[k] = c.lower[k] + mesh.h(k) * ref.coord(p, k);
      double v = 0.0;
      for (int a = 0; a < nl; ++a)
        if (c.dofs[a] >= 0) v += f[c.dofs[a]] * ref.value(p, a);
      const double e = v - exact.value(pt, t);
      sum += ref.weight(p) * e * e;
    }
  }
  return std::sqrt(sum * mesh.cell_volume());
}

double solve_level(const MmsSetup& setup, int n, double dt, double t_end) {
  const Operator op(setup);
  const Mesh mesh = build_mesh(setup.dx, setup.dq, n, n, setup.quad_order);
  Params params = setup.params;
  params.dt = dt;
  params.t_end = t_end;
  Stepper stepper(mesh, params, op.theta, op.flow);
  DensityState f;
  f.t = 0.0;
  f.coeffs.resize(static_cast<Eigen::Index>(mesh.num_dofs()));
  for (std::size_t i = 0; i < mesh.num_dofs(); ++i)
    f.coeffs[static_cast<Eigen::Index>(i)] = op.exact.value(mesh.dof_coords(i), 0.0);
  const long steps = std::lround(t_end / dt);
  const double h = t_end / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const double t1 = static_cast<double>(s + 1) * h;
    const Vector load = stepper.assembler().load([&](const double* p) { return op.forcing(p, t1); });
    StepReport rep;
    f = stepper.step(f, h, rep, nullptr, &load);
    f.t = t1;
  }
  return l2_error(mesh, f.coeffs, op.exact, t_end);
}

void fill_orders(MmsResult& r, bool by_dt) {
  for (std::size_t k = 0; k + 1 < r.levels.size(); ++k) {
    const double ratio = by_dt ? r.levels[k].dt / r.levels[k + 1].dt : r.levels[k].h / r.levels[k + 1].h;
    r.orders.push_back(std::log(r.levels[k].error / r.levels[k + 1].error) / std::log(ratio));
  }
}

}  // namespace

double mms_exact(const MmsSetup& setup, const double* point, double t) {
  return Exact{setup.dx, setup.dq, setup.profile}.value(point, t);
}

double mms_forcing(const MmsSetup& setup, const double* point, double t) {
  return Operator(setup).forcing(point, t);
}

MmsResult mms_study(const MmsSetup& setup, const std::vector<int>& levels) {
  validate_setup(setup);
  if (levels.size() < 2) throw ValidationError("mms: at least two levels are required");
  MmsResult r;
  for (int n : levels) {
    MmsLevel lv;
    lv.n = n;
    lv.h = 1.0 / n;
    lv.dt = setup.params.dt;
    lv.error = solve_level(setup, n, setup.params.dt, setup.params.t_end);
    r.levels.push_back(lv);
  }
  fill_orders(r, false);
  return r;
}

MmsResult mms_temporal_study(const MmsSetup& setup, int n, const std::vector<double>& dts) {
  validate_setup(setup);
  if (dts.size() < 2) throw ValidationError("mms: at least two time steps are required");
  MmsResult r;
  for (double dt : dts) {
    MmsLevel lv;
    lv.n = n;
    lv.h = 1.0 / n;
    lv.dt = dt;
    lv.error = solve_level(setup, n, dt, setup.params.t_end);
    r.levels.push_back(lv);
  }
  fill_orders(r, true);
  return r;
}

}  // namespace fenecpd
