#pragma once

#include <string>
#include <vector>

#include "fenecpd/fields.hpp"
#include "fenecpd/params.hpp"

namespace fenecpd {

enum class MmsProblem {
  Diffusion,  ///< constant theta, no flow
  Full        ///< the configured theta and flow
};

enum class TimeProfile {
  Linear,      ///< tau(t) = 1 + t: implicit Euler is exact in time
  Exponential  ///< tau(t) = exp(-2 t)
};

/// Manufactured solution f*(x,q,t) = (1-|q|^2)^2 prod_i sin(pi x_i) tau(t),
/// forced by the strong operator applied with fourth-order central differences.
struct MmsSetup {
  MmsProblem problem = MmsProblem::Diffusion;
  Params params;
  ThetaSpec theta;
  FlowSpec flow;
  int dx = 1;
  int dq = 1;
  int quad_order = 3;
  TimeProfile profile = TimeProfile::Linear;
  double fd_step = 1e-3;
};

struct MmsLevel {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  double error = 0.0;  ///< L2(Sigma) error at t_end
};

struct MmsResult {
  std::vector<MmsLevel> levels;
  std::vector<double> orders;  ///< log2(e_k / e_{k+1})
};

/// Mesh refinement with n_x = n_q = n for each level, fixed dt.
MmsResult mms_study(const MmsSetup& setup, const std::vector<int>& levels);

/// Time-step refinement on a fixed mesh with n cells per axis.
MmsResult mms_temporal_study(const MmsSetup& setup, int n, const std::vector<double>& dts);

/// Strong-form residual operator L f* evaluated by finite differences (exposed for tests).
double mms_forcing(const MmsSetup& setup, const double* point, double t);
double mms_exact(const MmsSetup& setup, const double* point, double t);

std::string to_string(MmsProblem p);
std::string to_string(TimeProfile p);

}  // namespace fenecpd
