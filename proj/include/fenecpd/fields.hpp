#pragma once

#include <array>
#include <optional>
#include <string>

namespace fenecpd {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// Positions in Omega and connector vectors are stored in fixed two-component
// arrays; components beyond the active dimension are zero.

enum class ThetaFamily { Constant, Affine, Sinusoidal };

/// Closed-form temperature families on the unit box.
///   constant:   theta0
///   affine:     theta0 + gradient . x
///   sinusoidal: theta0 + amplitude * cos(omega t) * prod_i cos(pi x_i)
struct ThetaSpec {
  ThetaFamily family = ThetaFamily::Constant;
  double theta0 = 1.0;
  Vec2 gradient{0.0, 0.0};
  double amplitude = 0.0;
  double omega = 0.0;
};

class TemperatureField {
 public:
  /// Throws ValidationError when theta is not bounded below by a positive
  /// constant on the unit box.
  TemperatureField(const ThetaSpec& spec, int dx);

  double value(const Vec2& x, double t) const;
  Vec2 gradient(const Vec2& x, double t) const;
  Mat2 hessian(const Vec2& x, double t) const;

  /// Infimum of theta over the unit box and all times (closed form).
  double min_value() const;
  /// Supremum of |grad theta| over the unit box and all times (closed form).
  double max_gradient_norm() const;
  /// Reference value used by the equilibrium initial states.
  double reference_value() const { return spec_.theta0; }
  /// True when grad theta and its Hessian vanish identically.
  bool spatially_constant() const;
  bool time_dependent() const;

  const ThetaSpec& spec() const { return spec_; }
  int dx() const { return dx_; }

 private:
  ThetaSpec spec_;
  int dx_;
};

enum class VelocityKind { None, Cellular };
enum class KappaKind { None, SimpleShear, Extensional, VelocityGradient };

/// Flow data. The velocity v and the velocity gradient kappa are configured
/// independently; the named families are presets over the two.
///   cellular velocity: Taylor-Green roll U (sin(pi x) cos(pi y), -cos(pi x) sin(pi y)), dx = 2 only
///   simple shear:      kappa = rate [[0,1],[0,0]]; for dq = 1 the stretching rate rate/2
///   extensional:       kappa = rate diag(1,-1);   for dq = 1 the rate itself
///   velocity-gradient: kappa = grad v restricted to the leading dq x dq block
struct FlowSpec {
  VelocityKind velocity = VelocityKind::None;
  KappaKind kappa = KappaKind::None;
  double amplitude = 0.0;  ///< cellular roll speed U
  double rate = 0.0;       ///< shear or extension rate

  /// Presets: "quiescent", "cellular", "simple-shear", "extensional".
  static std::optional<FlowSpec> from_family(const std::string& name, double amplitude,
                                             double rate);
};

class FlowField {
 public:
  /// Throws ValidationError for combinations that cannot be divergence-free
  /// with zero normal velocity (cellular velocity needs dx = 2).
  FlowField(const FlowSpec& spec, int dx, int dq);

  Vec2 velocity(const Vec2& x, double t) const;
  /// kappa acting on connector vectors (dq x dq block populated).
  Mat2 kappa(const Vec2& x, double t) const;

  bool has_velocity() const { return spec_.velocity != VelocityKind::None; }
  /// Sup of the max-norm of kappa entries over the unit box.
  double kappa_bound() const;
  /// Non-empty when kappa differs from grad v at sampled points.
  std::optional<std::string> consistency_warning() const;

  const FlowSpec& spec() const { return spec_; }

 private:
  Mat2 velocity_gradient(const Vec2& x) const;

  FlowSpec spec_;
  int dx_;
  int dq_;
};

std::string to_string(ThetaFamily f);
std::optional<ThetaFamily> theta_family_from_string(const std::string& s);
std::string to_string(VelocityKind k);
std::optional<VelocityKind> velocity_kind_from_string(const std::string& s);
std::string to_string(KappaKind k);
std::optional<KappaKind> kappa_kind_from_string(const std::string& s);

}  // namespace fenecpd
