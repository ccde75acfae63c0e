#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shrinker/curvature.hpp"
#include "shrinker/profile.hpp"

namespace shrinker {

/// Rotationally symmetric gradient shrinker: profile plus potential, with an optional
/// closed-form entropy value.
struct ShrinkerModel {
  std::string name;
  WarpedProfile profile;
  Potential potential;
  std::optional<double> mu_exact;
  std::string mu_tag;  ///< how mu_exact was obtained

  int dimension() const { return profile.dimension(); }
  /// Arclength coordinate of the minimum point p of f.
  double base_point() const { return potential.min_location(); }
};

/// Truncation of the Gaussian domain.
inline constexpr double kGaussianSMax = 20.0;
/// Half-length of the truncated cylinder domain.
inline constexpr double kCylinderHalfLength = 40.0;

ShrinkerModel make_gaussian(int m);
ShrinkerModel make_sphere(int m);
ShrinkerModel make_cylinder(int m);
/// Round sphere of arbitrary radius with the sphere potential f = m/2 (a shrinker only when
/// radius^2 = 2(m-1)).
ShrinkerModel make_sphere_with_radius(int m, double radius);
/// Catalog lookup by name ("gaussian", "sphere", "cylinder"); throws ContractError otherwise.
ShrinkerModel make_model(const std::string& name, int m);
std::vector<std::string> catalog_names();

/// phi -> lambda phi(s/lambda), f -> f(s/lambda): the rescaling that breaks the normalization.
ShrinkerModel scaled_model(const ShrinkerModel& model, double lambda);

struct ResidualReport {
  double soliton = 0.0;        ///< sup |Rc + Hess f - g/2|
  double normalization = 0.0;  ///< sup |R + |grad f|^2 - f|
  double tolerance = 0.0;
  bool pass = false;
};

ResidualReport verify_model(const ShrinkerModel& model, double tol = 1e-10, int grid = 512);

struct GrowthRow {
  double d = 0.0;
  double f = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool ok = false;
};

/// Quadratic growth bounds (d - 5m)_+^2/4 <= f <= (d + sqrt(2m))^2/4 at distance d from p.
std::vector<GrowthRow> f_growth_check(const ShrinkerModel& model, const std::vector<double>& d_grid);

struct WeightedRatioRow {
  double r = 0.0;
  double rho = 0.0;
  double ratio = 0.0;  ///< int_{B(p,r)} e^{-f} / int_{B(p,rho)} e^{-f}
  double bound = 0.0;  ///< (r/rho)^m
  bool ok = false;
};

/// Weighted volume ratio at the minimum point p against the Euclidean ratio: Rc + Hess f >= 0
/// and <grad f, gamma'> >= 0 along geodesics from p.
WeightedRatioRow weighted_ratio_check(const ShrinkerModel& model, double r, double rho);

struct FlowState {
  double t = 0.0;
  std::vector<double> x;       ///< initial arclength labels
  std::vector<double> S;       ///< psi_t(x) along the axis
  std::vector<double> S_x;     ///< d psi_t / dx
  std::vector<double> f;       ///< f(x, t) = f(psi_t(x))
  std::vector<double> scalar;  ///< R(g(t)) by finite differences of the pulled-back metric
  std::vector<double> grad_sq;
  double identity_residual = 0.0;  ///< sup |R(t) + |grad f(t)|^2 - f(t)/(1-t)|
  double metric_residual = 0.0;    ///< sup |FD pull-back coefficient - variational one|
  double dtf_excess = 0.0;         ///< sup (|d_t f| - f(x,0)), meaningful for t in [-2, 0]
};

/// Self-similar flow g(t) = (1-t) psi_t^* g checked on a grid of axis points.
FlowState flow_identity_check(const ShrinkerModel& model, double t, int grid = 200);

/// JSON export/import of catalog models (profile by expression id or samples).
nlohmann::json model_to_json(const ShrinkerModel& model);
ShrinkerModel model_from_json(const nlohmann::json& j);

}  // namespace shrinker
