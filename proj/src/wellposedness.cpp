#include "fenecpd/wellposedness.hpp"

#include <cmath>
#include <sstream>

#include "fenecpd/assembly.hpp"
#include "fenecpd/error.hpp"
#include "fenecpd/linalg.hpp"

namespace fenecpd {

double check_gradient_condition(const TemperatureField& theta, double q0) {
  const double tmin = theta.min_value();
  const double g = theta.max_gradient_norm();
  return tmin * tmin - q0 * q0 * g * g;
}

double check_strong_condition(const TemperatureField& theta, double q0, double c_hardy) {
  const double tmin = theta.min_value();
  const double g = theta.max_gradient_norm();
  return tmin * tmin / (q0 * q0) - 2.0 * c_hardy * tmin - g * g;
}

HardyEstimate estimate_hardy_constant(const Mesh& mesh) {
  const int dq = mesh.dq();
  const ReferenceElement ref(dq, mesh.quad_order());
  const int nl = ref.num_local();
  const double h = mesh.h_q();
  const double vol = dq == 1 ? h : h * h;
  const double s2 = mesh.scale() * mesh.scale();
  std::vector<Eigen::Triplet<double>> wt, kt;
  for (const Mesh::QCell& c : mesh.q_cells()) {
    for (int p = 0; p < ref.num_points(); ++p) {
      double r2 = 0.0;
      for (int k = 0; k < dq; ++k) {
        const double qk = c.lower[k] + h * ref.coord(p, k);
        r2 += qk * qk;
      }
      const double d = 1.0 - r2 / s2;
      const double weight = ref.weight(p) * vol / (d * d);
      for (int a = 0; a < nl; ++a) {
        if (c.dofs[a] < 0) continue;
        for (int b = 0; b < nl; ++b) {
          if (c.dofs[b] < 0) continue;
          wt.emplace_back(c.dofs[a], c.dofs[b], weight * ref.value(p, a) * ref.value(p, b));
          double g = 0.0;
          for (int k = 0; k < dq; ++k) g += ref.ref_grad(p, a, k) * ref.ref_grad(p, b, k);
          kt.emplace_back(c.dofs[a], c.dofs[b], ref.weight(p) * vol * g / (h * h));
        }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(mesh.num_q_dofs());
  SparseMatrix w(n, n), k(n, n);
  w.setFromTriplets(wt.begin(), wt.end());
  k.setFromTriplets(kt.begin(), kt.end());
  EigenOptions opts;
  opts.max_iterations = 1000;
  const EigenResult r = largest_generalized_eigenvalue(w, k, opts);
  HardyEstimate est;
  est.c_hardy = std::sqrt(r.value);
  est.n_q = mesh.n_q();
  est.iterations = r.iterations;
  return est;
}

double estimate_poincare_constant(const Mesh& mesh) {
  Assembler as(mesh);
  const SparseMatrix m = as.mass();
  const SparseMatrix k = add_same_pattern(as.stiffness_x(), as.stiffness_q());
  EigenOptions opts;
  opts.max_iterations = 1000;
  return std::sqrt(largest_generalized_eigenvalue(m, k, opts).value);
}

CoercivityConstants weak_coercivity(double theta_min, double grad_sup, double de, double q0,
                                    double c_poincare) {
  const double margin = theta_min * theta_min - q0 * q0 * grad_sup * grad_sup;
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "weak coercivity condition theta_min^2 > q0^2 |grad theta|^2 fails (margin " << margin
       << ")";
    throw ValidationError(os.str());
  }
  CoercivityConstants c;
  c.tilde = min_eigenvalue_2x2(theta_min / de, -grad_sup / de, theta_min / (q0 * q0 * de));
  c.full = c.tilde / (1.0 + c_poincare * c_poincare);
  return c;
}

CoercivityConstants strong_coercivity(double theta_min, double grad_sup, double de, double q0,
                                      double c_hardy, double c_poincare) {
  const double margin =
      theta_min * theta_min / (q0 * q0) - 2.0 * c_hardy * theta_min - grad_sup * grad_sup;
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "strong coercivity condition theta_min^2/q0^2 - 2 c_H theta_min - |grad theta|^2 > 0 "
          "fails (margin "
       << margin << ")";
    throw ValidationError(os.str());
  }
  CoercivityConstants c;
  c.tilde = min_eigenvalue_2x2(theta_min / de, -grad_sup / de,
                               theta_min / (q0 * q0 * de) - 2.0 * c_hardy / de);
  c.full = c.tilde / (1.0 + c_poincare * c_poincare);
  return c;
}

CoercivityReport audit(const Mesh& mesh, const Params& params, const TemperatureField& theta) {
  CoercivityReport r;
  r.theta_min = theta.min_value();
  r.grad_theta_sup = theta.max_gradient_norm();
  r.margin_weak = check_gradient_condition(theta, params.q0);
  const HardyEstimate h = estimate_hardy_constant(mesh);
  r.c_hardy = h.c_hardy;
  r.hardy_n_q = h.n_q;
  r.margin_strong = check_strong_condition(theta, params.q0, r.c_hardy);
  r.c_poincare = estimate_poincare_constant(mesh);
  if (r.margin_weak > 0.0) {
    const auto c = weak_coercivity(r.theta_min, r.grad_theta_sup, params.de, params.q0, r.c_poincare);
    r.lambda_m_tilde = c.tilde;
    r.lambda_m = c.full;
  }
  if (r.margin_strong > 0.0) {
    const auto c = strong_coercivity(r.theta_min, r.grad_theta_sup, params.de, params.q0,
                                     r.c_hardy, r.c_poincare);
    r.lambda_M_tilde = c.tilde;
    r.lambda_M = c.full;
  }
  return r;
}

}  // namespace fenecpd
