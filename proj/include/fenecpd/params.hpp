#pragma once

#include <string>
#include <vector>

namespace fenecpd {

/// Physical and numerical scalars of one simulation.
struct Params {
  double de = 1.0;     ///< Deborah number
  double q0 = 1.0;     ///< maximum dimensionless spring stretch
  double eps = 0.1;    ///< regularization parameter, in (0,1)
  double dt = 0.01;    ///< time step
  double t_end = 0.1;  ///< final time (0 allowed: trajectory is the initial state)
  double tol_fp = 1e-9;
  double tol_lin = 1e-12;
  int max_picard = 50;
  /// Use 1/(2 De) on the x-diffusion term instead of 1/De.
  bool strong_form_halved_xdiff = false;

  /// All violated invariants, empty when valid.
  std::vector<std::string> violations() const;
  /// Throws ValidationError listing every violation.
  void validate() const;
};

}  // namespace fenecpd
