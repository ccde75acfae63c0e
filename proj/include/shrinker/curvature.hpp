#pragma once

#include <functional>

#include "shrinker/jet.hpp"
#include "shrinker/profile.hpp"

namespace shrinker {

/// Radial potential f(s) with derivatives (Taylor jet) and the location of its minimum.
class Potential {
 public:
  using Evaluator = std::function<Jet(double)>;

  Potential(Evaluator f, double min_location, ExpressionId id = {})
      : f_(std::move(f)), min_location_(min_location), id_(std::move(id)) {}

  Jet jet(double s) const { return f_(s); }
  double value(double s) const { return f_(s).value(); }
  double min_location() const { return min_location_; }
  const ExpressionId& expression() const { return id_; }

 private:
  Evaluator f_;
  double min_location_;
  ExpressionId id_;
};

/// f(s) = s^2/4 + c.
Potential quadratic_potential(double c);
/// f(s) = c.
Potential constant_potential(double c, double min_location);

/// Curvature of ds^2 + phi^2 g_{S^{m-1}} at one arclength value.
struct CurvatureData {
  double s = 0.0;
  double k_rad = 0.0;  ///< sectional curvature of planes containing d/ds
  double k_sph = 0.0;  ///< sectional curvature of planes tangent to the sphere
  double ric_rad = 0.0;
  double ric_sph = 0.0;
  double scalar = 0.0;
  double norm_rc = 0.0;
  double norm_rm = 0.0;  ///< full tensor norm, sum over R_{ijkl}^2 in an orthonormal frame
};

/// Distance from a smooth pole inside which the series expansion replaces the quotient formulas.
inline constexpr double kCapSeriesRadius = 1e-3;

/// Curvature at s; poles use the series phi = t + a3 t^3 + a5 t^5.
CurvatureData curvature_at(const WarpedProfile& profile, double s);

/// Hessian eigenvalues of f and |grad f|^2 at s.
struct HessianData {
  double hess_rad = 0.0;
  double hess_sph = 0.0;
  double grad_sq = 0.0;
};

HessianData potential_hessian(const WarpedProfile& profile, const Potential& potential, double s);

/// Assembles CurvatureData from the two sectional curvatures.
CurvatureData curvature_from_sectional(int m, double s, double k_rad, double k_sph);

}  // namespace shrinker
