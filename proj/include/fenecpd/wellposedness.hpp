#pragma once

#include <optional>

#include "fenecpd/fields.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/params.hpp"

namespace fenecpd {

/// Solvability audit of the problem data.
///
/// margin_weak   = theta_min^2 - q0^2 |grad theta|_inf^2
/// margin_strong = theta_min^2/q0^2 - 2 c_H theta_min - |grad theta|_inf^2
///
/// lambda_m (lambda_M) is the full-H1 coercivity constant of the diffusion
/// form b (of b plus the FENE term), present only when the corresponding
/// margin is positive.
struct CoercivityReport {
  double theta_min = 0.0;
  double grad_theta_sup = 0.0;
  double margin_weak = 0.0;
  double c_hardy = 0.0;
  double margin_strong = 0.0;
  double c_poincare = 0.0;
  std::optional<double> lambda_m_tilde;
  std::optional<double> lambda_m;
  std::optional<double> lambda_M_tilde;
  std::optional<double> lambda_M;
  int hardy_n_q = 0;
};

double check_gradient_condition(const TemperatureField& theta, double q0);

struct HardyEstimate {
  double c_hardy = 0.0;
  int n_q = 0;
  int iterations = 0;
};

/// sqrt of the largest generalized eigenvalue of (W, K) on the connector
/// sub-mesh, W weighted by (1-|q|^2)^-2 and K the q-stiffness matrix.
HardyEstimate estimate_hardy_constant(const Mesh& mesh);

double check_strong_condition(const TemperatureField& theta, double q0, double c_hardy);

/// sqrt of the largest generalized eigenvalue of (M, K_full) on the interior DOFs.
double estimate_poincare_constant(const Mesh& mesh);

struct CoercivityConstants {
  double tilde = 0.0;  ///< constant against |grad psi|^2
  double full = 0.0;   ///< constant against |psi|_{H1}^2
};

/// Smallest eigenvalue of [[tmin/De, -g/De], [-g/De, tmin/(q0^2 De)]],
/// divided by (1 + c_P^2). Throws ValidationError when the weak margin is not positive.
CoercivityConstants weak_coercivity(double theta_min, double grad_sup, double de, double q0,
                                    double c_poincare);
/// Same with the lower-right entry reduced by 2 c_H / De. Throws
/// ValidationError when the strong margin is not positive.
CoercivityConstants strong_coercivity(double theta_min, double grad_sup, double de, double q0,
                                      double c_hardy, double c_poincare);

/// Full audit on a mesh.
CoercivityReport audit(const Mesh& mesh, const Params& params, const TemperatureField& theta);

}  // namespace fenecpd
