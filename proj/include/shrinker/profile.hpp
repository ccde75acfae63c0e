#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "shrinker/jet.hpp"
#include "shrinker/spline.hpp"

namespace shrinker {

/// How a warped metric ds^2 + phi(s)^2 g_{S^{m-1}} ends at a domain endpoint.
enum class EndKind {
  Open,       ///< truncated domain, phi > 0 at the endpoint
  SmoothCap,  ///< smooth pole: phi = 0, phi' = +-1
  Tip,        ///< phi = 0 without a smooth closing (conical or worse)
};

/// Symmetries beyond rotations about the pole, used to decide which ball centers are supported.
enum class Homogeneity {
  None,
  Flat,      ///< Euclidean space in polar form, phi(s) = s
  Cylinder,  ///< R x S^{m-1}(rho), phi constant
};

/// Identifies an analytic profile for serialization, e.g. "flat", "round:2.449".
struct ExpressionId {
  std::string text;
};

/// Rotationally symmetric metric ds^2 + phi(s)^2 g_{S^{m-1}} on [lo, hi].
///
/// The evaluator returns the Taylor jet of phi at s. Analytic profiles carry
/// derivatives through order 5; spline-sampled profiles through order 3.
class WarpedProfile {
 public:
  using Evaluator = std::function<Jet(double)>;

  WarpedProfile(std::string name, int m, double lo, double hi, EndKind lo_kind, EndKind hi_kind,
                Evaluator phi, int derivative_order = Jet::kOrder,
                Homogeneity homogeneity = Homogeneity::None);

  const std::string& name() const { return name_; }
  int dimension() const { return m_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  EndKind lo_kind() const { return lo_kind_; }
  EndKind hi_kind() const { return hi_kind_; }
  int derivative_order() const { return order_; }
  Homogeneity homogeneity() const { return homogeneity_; }
  bool sampled() const { return order_ < Jet::kOrder; }

  /// Jet of phi at s; throws DomainError outside [lo, hi].
  Jet jet(double s) const;
  /// phi and phi' only; uses the first-order evaluator when one is attached.
  std::array<double, 2> phi_dphi(double s) const;
  double phi(double s) const { return phi_dphi(s)[0]; }
  double dphi(double s) const { return phi_dphi(s)[1]; }

  /// Optional cheaper evaluator of (phi, phi'), used by the geodesic integrator.
  using SlopeEvaluator = std::function<std::array<double, 2>(double)>;
  void set_slope_evaluator(SlopeEvaluator f) { slope_ = std::move(f); }

  bool contains(double s) const;
  /// True when s coincides with an endpoint of the given kind.
  bool at_end(double s, EndKind kind) const;
  /// True when s is a smooth pole of the metric.
  bool is_pole(double s) const { return at_end(s, EndKind::SmoothCap); }
  /// Endpoint nearest to s where phi vanishes, if any, and the distance to it.
  bool nearest_zero_end(double s, double& end, double& distance) const;

  /// Attaches the analytic expression id used by the JSON schema.
  void set_expression(ExpressionId id) { expr_ = std::move(id); }
  const ExpressionId& expression() const { return expr_; }

  /// Stored samples for spline profiles (empty for analytic ones).
  const std::vector<double>& samples() const { return samples_; }
  void set_samples(std::vector<double> samples) { samples_ = std::move(samples); }

 private:
  std::string name_;
  int m_;
  double lo_;
  double hi_;
  EndKind lo_kind_;
  EndKind hi_kind_;
  Evaluator eval_;
  SlopeEvaluator slope_;
  int order_;
  Homogeneity homogeneity_;
  ExpressionId expr_;
  std::vector<double> samples_;
};

/// phi(s) = s on [0, s_max] (Euclidean space).
WarpedProfile flat_profile(int m, double s_max);
/// phi(s) = radius * sin(s / radius) on [0, pi*radius] (round sphere).
WarpedProfile round_profile(int m, double radius);
/// phi(s) = radius on [lo, hi] (round cylinder).
WarpedProfile cylinder_profile(int m, double radius, double lo, double hi);

/// Clamped-spline profile through uniform samples of phi on [lo, hi].
WarpedProfile sampled_profile(std::string name, int m, double lo, double hi, EndKind lo_kind,
                              EndKind hi_kind, std::vector<double> samples);

/// Samples an analytic profile on `nodes` uniform points and wraps it as a spline profile.
WarpedProfile resample(const WarpedProfile& analytic, int nodes = 2048);

/// Result of checking the WarpedProfile invariants.
struct ProfileCheck {
  bool positive_interior = true;
  bool caps_ok = true;
  double cap_error = 0.0;        ///< worst | |phi'| - 1 | or |phi| at capped ends
  double derivative_error = 0.0; ///< worst relative error of phi' against a 5-point stencil
  bool ok() const { return positive_interior && caps_ok; }
};

/// Verifies positivity, cap conditions and stencil agreement of phi'.
ProfileCheck check_profile(const WarpedProfile& profile, int grid = 512);

/// Area of the unit sphere S^{k}.
double unit_sphere_area(int k);
/// Volume of the unit ball in R^m.
double unit_ball_volume(int m);

}  // namespace shrinker
