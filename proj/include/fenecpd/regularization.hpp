#pragma once

#include <span>

namespace fenecpd {

/// Entropy density E(y) = y ln y, E(0) = 0. Throws ValidationError for y < 0.
double entropy(double y);

/// Bounded Lipschitz cutoff of ln:
///   ln(1/eps)  for z >= 1/eps
///   ln z       for eps <= z <= 1/eps
///   ln eps     for 1/ln(eps) <= z <= eps
///   1/z        for z <= 1/ln(eps)
/// Breakpoint ties go to the lower branch. Requires 0 < eps < 1.
double g_eps(double z, double eps);

/// E_eps(z) = z g_eps(z).
double e_eps(double z, double eps);

/// Regularized FENE factor 1/(eps + 1 - |q|^2). Requires |q| <= 1 and
/// eps > 0 when |q| = 1.
double fene_factor(std::span<const double> q, double eps);
double fene_factor(double q_norm_sq, double eps);

/// Smallest tabulated c(delta) with |E_eps(z)| <= c(delta) + |z|^(1+delta)
/// for all z and every eps in (0,1). Computed numerically as
/// max(1, sup_{z>0} (z |ln z| - z^(1+delta))).
double entropy_bound_constant(double delta);

}  // namespace fenecpd
