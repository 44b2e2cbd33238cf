#include <cmath>
#include <numbers>
#include <sstream>

#include "fenecpd/error.hpp"
#include "fenecpd/state.hpp"

namespace fenecpd {

std::string to_string(InitialFamily f) {
  switch (f) {
    case InitialFamily::EquilibriumUniform: return "fene-equilibrium-uniform";
    case InitialFamily::EquilibriumBump: return "fene-equilibrium-bump";
    case InitialFamily::CustomNodal: return "custom-nodal";
  }
  return "unknown";
}

bool initial_family_from_string(const std::string& s, InitialFamily& out) {
  for (auto f : {InitialFamily::EquilibriumUniform, InitialFamily::EquilibriumBump,
                 InitialFamily::CustomNodal}) {
    if (s == to_string(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

double discrete_integral(const Mesh& mesh, const Vector& f) {
  if (static_cast<std::size_t>(f.size()) != mesh.num_dofs())
    throw ValidationError("discrete_integral: vector length does not match the mesh");
  // integral of each multilinear hat over one cell is volume / 2^dim
  const double w = mesh.cell_volume() / mesh.num_local();
  double sum = 0.0;
  for (const Cell& c : mesh.cells())
    for (int a = 0; a < mesh.num_local(); ++a)
      if (c.dofs[a] >= 0) sum += f[c.dofs[a]];
  return sum * w;
}

DensityState initial_condition(const Mesh& mesh, const Params& params,
                               const TemperatureField& theta, const InitialSpec& spec) {
  const std::size_t n = mesh.num_dofs();
  DensityState state;
  state.coeffs.resize(static_cast<Eigen::Index>(n));
  if (spec.family == InitialFamily::CustomNodal) {
    if (spec.nodal.size() != n) {
      std::ostringstream os;
      os << "initial_condition: custom-nodal expects " << n << " values, got " << spec.nodal.size();
      throw ValidationError(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double v = spec.nodal[i];
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "initial_condition: custom-nodal value " << i << " is " << v
           << "; the initial density must be nonnegative";
        throw ValidationError(os.str());
      }
      state.coeffs[static_cast<Eigen::Index>(i)] = v;
    }
  } else {
    const double theta0 = spec.theta0 > 0.0 ? spec.theta0 : theta.reference_value();
    const double expo = params.q0 * params.q0 / theta0;
    const int dx = mesh.dx(), dq = mesh.dq();
    const double s = mesh.scale();
    for (std::size_t i = 0; i < n; ++i) {
      const double* c = mesh.dof_coords(i);
      double q2 = 0.0;
      for (int k = 0; k < dq; ++k) q2 += c[dx + k] * c[dx + k];
      q2 /= s * s;
      double v = std::pow(std::max(0.0, 1.0 - q2), expo);
      if (spec.family == InitialFamily::EquilibriumBump)
        for (int k = 0; k < dx; ++k) v *= std::sin(std::numbers::pi * c[k] / s);
      state.coeffs[static_cast<Eigen::Index>(i)] = v;
    }
  }
  const double z = discrete_integral(mesh, state.coeffs);
  if (!(z > 0.0)) throw ValidationError("initial_condition: initial density has zero integral");
  state.coeffs /= z;
  return state;
}

}  // namespace fenecpd
