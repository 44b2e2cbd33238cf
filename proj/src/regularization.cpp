#include "fenecpd/regularization.hpp"

#include <algorithm>
#include <cmath>

#include "fenecpd/error.hpp"

namespace fenecpd {

double entropy(double y) {
  if (!(y >= 0.0)) throw ValidationError("entropy: argument must be >= 0");
  return y > 0.0 ? y * std::log(y) : 0.0;
}

double g_eps(double z, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("g_eps: eps must lie in (0,1)");
  const double upper = 1.0 / eps;
  const double lower = 1.0 / std::log(eps);  // negative
  const double log_eps = std::log(eps);
  if (z > upper) return -log_eps;
  if (z > eps) return std::min(std::log(z), -log_eps);
  if (z > lower) return log_eps;
  // rounding of 1/z near the breakpoint must not dip below ln eps
  return std::max(1.0 / z, log_eps);
}

double e_eps(double z, double eps) { return z * g_eps(z, eps); }

double fene_factor(double q_norm_sq, double eps) {
  if (!(q_norm_sq >= 0.0) || q_norm_sq > 1.0 + 1e-14)
    throw ValidationError("fene_factor: |q| must not exceed 1");
  if (!(eps >= 0.0)) throw ValidationError("fene_factor: eps must be >= 0");
  const double denom = eps + 1.0 - std::min(q_norm_sq, 1.0);
  if (!(denom > 0.0)) throw ValidationError("fene_factor: singular at |q| = 1 with eps = 0");
  return 1.0 / denom;
}

double fene_factor(std::span<const double> q, double eps) {
  double s = 0.0;
  for (double c : q) s += c * c;
  return fene_factor(s, eps);
}

double entropy_bound_constant(double delta) {
  if (!(delta > 0.0)) throw ValidationError("entropy_bound_constant: delta must be > 0");
  // excess(u) = z |ln z| - z^(1+delta) with z = e^u
  auto excess = [delta](double u) {
    const double z = std::exp(u);
    return z * std::abs(u) - std::exp((1.0 + delta) * u);
  };
  const double u_max = 700.0 / (1.0 + delta);
  const int n = 20000;
  double best_u = -60.0, best = excess(best_u);
  for (int i = 1; i <= n; ++i) {
    const double u = -60.0 + (u_max + 60.0) * i / n;
    const double v = excess(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  // golden-section refinement in the bracketing grid cell
  const double step = (u_max + 60.0) / n;
  double a = best_u - step, b = best_u + step;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (excess(c) > excess(d))
      b = d;
    else
      a = c;
  }
  best = std::max(best, excess(0.5 * (a + b)));
  // negative arguments contribute |z g_eps(z)| <= 1
  return std::max(1.0, best);
}

}  // namespace fenecpd
