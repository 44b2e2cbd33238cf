#include "fenecpd/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fenecpd/error.hpp"

namespace fenecpd {

namespace {
constexpr double kPi = std::numbers::pi;
}

TemperatureField::TemperatureField(const ThetaSpec& spec, int dx) : spec_(spec), dx_(dx) {
  if (dx != 1 && dx != 2) throw ValidationError("temperature field: dx must be 1 or 2");
  if (!std::isfinite(spec.theta0) || !std::isfinite(spec.amplitude) || !std::isfinite(spec.omega) ||
      !std::isfinite(spec.gradient[0]) || !std::isfinite(spec.gradient[1]))
    throw ValidationError("temperature field: non-finite coefficient");
  if (!(min_value() > 0.0)) {
    std::ostringstream os;
    os << "temperature field: theta_min = " << min_value() << " is not positive";
    throw ValidationError(os.str());
  }
}

double TemperatureField::value(const Vec2& x, double t) const {
  switch (spec_.family) {
    case ThetaFamily::Constant:
      return spec_.theta0;
    case ThetaFamily::Affine: {
      double v = spec_.theta0;
      for (int i = 0; i < dx_; ++i) v += spec_.gradient[i] * x[i];
      return v;
    }
    case ThetaFamily::Sinusoidal: {
      double p = spec_.amplitude * std::cos(spec_.omega * t);
      for (int i = 0; i < dx_; ++i) p *= std::cos(kPi * x[i]);
      return spec_.theta0 + p;
    }
  }
  return spec_.theta0;
}

Vec2 TemperatureField::gradient(const Vec2& x, double t) const {
  Vec2 g{0.0, 0.0};
  switch (spec_.family) {
    case ThetaFamily::Constant:
      break;
    case ThetaFamily::Affine:
      for (int i = 0; i < dx_; ++i) g[i] = spec_.gradient[i];
      break;
    case ThetaFamily::Sinusoidal: {
      const double a = spec_.amplitude * std::cos(spec_.omega * t);
      if (dx_ == 1) {
        g[0] = -a * kPi * std::sin(kPi * x[0]);
      } else {
        g[0] = -a * kPi * std::sin(kPi * x[0]) * std::cos(kPi * x[1]);
        g[1] = -a * kPi * std::cos(kPi * x[0]) * std::sin(kPi * x[1]);
      }
      break;
    }
  }
  return g;
}

Mat2 TemperatureField::hessian(const Vec2& x, double t) const {
  Mat2 h{};
  if (spec_.family != ThetaFamily::Sinusoidal) return h;
  const double a = spec_.amplitude * std::cos(spec_.omega * t);
  const double p2 = kPi * kPi;
  if (dx_ == 1) {
    h[0][0] = -a * p2 * std::cos(kPi * x[0]);
  } else {
    const double c0 = std::cos(kPi * x[0]), c1 = std::cos(kPi * x[1]);
    const double s0 = std::sin(kPi * x[0]), s1 = std::sin(kPi * x[1]);
    h[0][0] = -a * p2 * c0 * c1;
    h[1][1] = -a * p2 * c0 * c1;
    h[0][1] = a * p2 * s0 * s1;
    h[1][0] = h[0][1];
  }
  return h;
}

double TemperatureField::min_value() const {
  switch (spec_.family) {
    case ThetaFamily::Constant:
      return spec_.theta0;
    case ThetaFamily::Affine: {
      double v = spec_.theta0;
      for (int i = 0; i < dx_; ++i) v += std::min(spec_.gradient[i], 0.0);
      return v;
    }
    case ThetaFamily::Sinusoidal:
      return spec_.theta0 - std::abs(spec_.amplitude);
  }
  return spec_.theta0;
}

double TemperatureField::max_gradient_norm() const {
  switch (spec_.family) {
    case ThetaFamily::Constant:
      return 0.0;
    case ThetaFamily::Affine: {
      double s = 0.0;
      for (int i = 0; i < dx_; ++i) s += spec_.gradient[i] * spec_.gradient[i];
      return std::sqrt(s);
    }
    case ThetaFamily::Sinusoidal:
      // |grad|^2 = a^2 pi^2 (s0^2 c1^2 + c0^2 s1^2) <= a^2 pi^2, attained at (1/2, 0)
      return std::abs(spec_.amplitude) * kPi;
  }
  return 0.0;
}

bool TemperatureField::spatially_constant() const {
  switch (spec_.family) {
    case ThetaFamily::Constant:
      return true;
    case ThetaFamily::Affine:
      return max_gradient_norm() == 0.0;
    case ThetaFamily::Sinusoidal:
      return spec_.amplitude == 0.0;
  }
  return true;
}

bool TemperatureField::time_dependent() const {
  return spec_.family == ThetaFamily::Sinusoidal && spec_.amplitude != 0.0 && spec_.omega != 0.0;
}

std::optional<FlowSpec> FlowSpec::from_family(const std::string& name, double amplitude,
                                              double rate) {
  FlowSpec s;
  s.amplitude = amplitude;
  s.rate = rate;
  if (name == "quiescent") return s;
  if (name == "cellular") {
    s.velocity = VelocityKind::Cellular;
    s.kappa = KappaKind::VelocityGradient;
    return s;
  }
  if (name == "simple-shear") {
    s.kappa = KappaKind::SimpleShear;
    return s;
  }
  if (name == "extensional") {
    s.kappa = KappaKind::Extensional;
    return s;
  }
  return std::nullopt;
}

FlowField::FlowField(const FlowSpec& spec, int dx, int dq) : spec_(spec), dx_(dx), dq_(dq) {
  if (dx != 1 && dx != 2) throw ValidationError("flow field: dx must be 1 or 2");
  if (dq != 1 && dq != 2) throw ValidationError("flow field: dq must be 1 or 2");
  if (!std::isfinite(spec.amplitude) || !std::isfinite(spec.rate))
    throw ValidationError("flow field: non-finite coefficient");
  if (spec.velocity == VelocityKind::Cellular && dx != 2)
    throw ValidationError(
        "flow field: the cellular velocity needs dx = 2 (a divergence-free velocity with zero "
        "normal component on [0,1] vanishes)");
}

Vec2 FlowField::velocity(const Vec2& x, double) const {
  if (spec_.velocity == VelocityKind::None) return {0.0, 0.0};
  const double u = spec_.amplitude;
  return {u * std::sin(kPi * x[0]) * std::cos(kPi * x[1]),
          -u * std::cos(kPi * x[0]) * std::sin(kPi * x[1])};
}

Mat2 FlowField::velocity_gradient(const Vec2& x) const {
  Mat2 g{};
  if (spec_.velocity == VelocityKind::None) return g;
  const double u = spec_.amplitude * kPi;
  const double c0 = std::cos(kPi * x[0]), c1 = std::cos(kPi * x[1]);
  const double s0 = std::sin(kPi * x[0]), s1 = std::sin(kPi * x[1]);
  // g[i][j] = d v_i / d x_j
  g[0][0] = u * c0 * c1;
  g[0][1] = -u * s0 * s1;
  g[1][0] = u * s0 * s1;
  g[1][1] = -u * c0 * c1;
  return g;
}

Mat2 FlowField::kappa(const Vec2& x, double) const {
  Mat2 k{};
  switch (spec_.kappa) {
    case KappaKind::None:
      break;
    case KappaKind::SimpleShear:
      if (dq_ == 2)
        k[0][1] = spec_.rate;
      else
        k[0][0] = 0.5 * spec_.rate;
      break;
    case KappaKind::Extensional:
      k[0][0] = spec_.rate;
      if (dq_ == 2) k[1][1] = -spec_.rate;
      break;
    case KappaKind::VelocityGradient: {
      const Mat2 g = velocity_gradient(x);
      for (int i = 0; i < dq_; ++i)
        for (int j = 0; j < dq_; ++j) k[i][j] = g[i][j];
      break;
    }
  }
  return k;
}

double FlowField::kappa_bound() const {
  switch (spec_.kappa) {
    case KappaKind::None:
      return 0.0;
    case KappaKind::SimpleShear:
      return dq_ == 2 ? std::abs(spec_.rate) : 0.5 * std::abs(spec_.rate);
    case KappaKind::Extensional:
      return std::abs(spec_.rate);
    case KappaKind::VelocityGradient:
      return std::abs(spec_.amplitude) * kPi;
  }
  return 0.0;
}

std::optional<std::string> FlowField::consistency_warning() const {
  constexpr int kSamples = 7;
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    for (int j = 0; j < kSamples; ++j) {
      const Vec2 x{(i + 0.5) / kSamples, dx_ == 2 ? (j + 0.5) / kSamples : 0.0};
      const Mat2 k = kappa(x, 0.0);
      const Mat2 g = velocity_gradient(x);
      for (int a = 0; a < dq_; ++a)
        for (int b = 0; b < dq_; ++b) worst = std::max(worst, std::abs(k[a][b] - g[a][b]));
    }
  }
  if (worst <= 1e-12) return std::nullopt;
  std::ostringstream os;
  os << "kappa differs from grad v (max entry difference " << worst
     << "); both are used as given";
  return os.str();
}

std::string to_string(ThetaFamily f) {
  switch (f) {
    case ThetaFamily::Constant: return "constant";
    case ThetaFamily::Affine: return "affine";
    case ThetaFamily::Sinusoidal: return "sinusoidal-perturbation";
  }
  return "constant";
}

std::optional<ThetaFamily> theta_family_from_string(const std::string& s) {
  if (s == "constant") return ThetaFamily::Constant;
  if (s == "affine") return ThetaFamily::Affine;
  if (s == "sinusoidal-perturbation" || s == "sinusoidal") return ThetaFamily::Sinusoidal;
  return std::nullopt;
}

std::string to_string(VelocityKind k) {
  return k == VelocityKind::Cellular ? "cellular" : "none";
}

std::optional<VelocityKind> velocity_kind_from_string(const std::string& s) {
  if (s == "none") return VelocityKind::None;
  if (s == "cellular") return VelocityKind::Cellular;
  return std::nullopt;
}

std::string to_string(KappaKind k) {
  switch (k) {
    case KappaKind::None: return "none";
    case KappaKind::SimpleShear: return "simple-shear";
    case KappaKind::Extensional: return "extensional";
    case KappaKind::VelocityGradient: return "velocity-gradient";
  }
  return "none";
}

std::optional<KappaKind> kappa_kind_from_string(const std::string& s) {
  if (s == "none") return KappaKind::None;
  if (s == "simple-shear") return KappaKind::SimpleShear;
  if (s == "extensional") return KappaKind::Extensional;
  if (s == "velocity-gradient") return KappaKind::VelocityGradient;
  return std::nullopt;
}

}  // namespace fenecpd
