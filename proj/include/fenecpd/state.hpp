#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "fenecpd/fields.hpp"
#include "fenecpd/mesh.hpp"
#include "fenecpd/params.hpp"

namespace fenecpd {

using Vector = Eigen::VectorXd;

/// Nodal values of the discrete density over the interior DOFs at time t.
struct DensityState {
  double t = 0.0;
  Vector coeffs;
};

enum class InitialFamily { EquilibriumUniform, EquilibriumBump, CustomNodal };

std::string to_string(InitialFamily f);
bool initial_family_from_string(const std::string& s, InitialFamily& out);

struct InitialSpec {
  InitialFamily family = InitialFamily::EquilibriumUniform;
  /// Temperature used in the equilibrium exponent q0^2/theta0; <= 0 means
  /// the temperature field's reference value.
  double theta0 = 0.0;
  std::vector<double> nodal;  ///< custom-nodal values, one per DOF
};

/// Discrete integral of the finite-element function with nodal values f.
double discrete_integral(const Mesh& mesh, const Vector& f);

/// Nodal initial density, normalized to unit discrete integral.
///   equilibrium-uniform: (1-|q|^2)^(q0^2/theta0)
///   equilibrium-bump:    same, times prod_i sin(pi x_i)
///   custom-nodal:        the given values (all >= 0)
DensityState initial_condition(const Mesh& mesh, const Params& params,
                               const TemperatureField& theta, const InitialSpec& spec);

}  // namespace fenecpd
