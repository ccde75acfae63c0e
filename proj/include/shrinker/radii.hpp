#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shrinker/model.hpp"

namespace shrinker {

inline constexpr double kDefaultDelta = 0.05;
inline constexpr double kDefaultEps = 0.01;

/// A radius together with the sentinel flag: `sentinel` means the defining criterion still
/// holds at the largest radius the method can evaluate (value = that cap), standing in for +inf.
struct RadiusValue {
  double value = 0.0;
  bool sentinel = false;
};

/// 1/(100 D).
double radius_cap(double D);

/// |B(x, r)| / (omega_m r^m) for x on the axis at s. Uses the closed-form ball volumes where
/// available, the round sphere's homogeneity, and boundary shooting for other analytic centers.
/// Throws CapabilityError for sampled profiles at non-pole points and for tip centers.
double volume_ratio(const WarpedProfile& profile, double s, double r);

/// Largest radius volume_ratio accepts at s.
double volume_cap(const WarpedProfile& profile, double s);

/// sup of r with volume_ratio > 1 - delta, bisection to 1e-6.
RadiusValue volume_radius(const WarpedProfile& profile, double s, double delta = kDefaultDelta);

/// GH comparison of a net of B(x, r) with the Euclidean net of the same normal coordinates.
struct GhEvaluation {
  double r = 0.0;
  int net_size = 0;
  double distortion = 0.0;  ///< identity-correspondence distortion
  double slack = 0.0;       ///< 2 covering L_est
  double normalized = 0.0;  ///< (distortion + slack) / (2 r)
  double normalized_distortion = 0.0;  ///< distortion / (2 r)
};

/// Net spacing is net_fraction * r.
GhEvaluation gh_evaluate(const WarpedProfile& profile, double s, double r, double net_fraction = 0.4);

struct GhRadius {
  RadiusValue radius;
  GhEvaluation at_radius;  ///< evaluation at the returned radius
  int uncertified = 0;     ///< evaluations whose net failed validation (treated as failures)
};

/// sup of r with normalized GH bound < eps, bisection to relative 1e-3. Throws ResolutionError
/// when the normalized slack at the returned radius exceeds eps/2.
GhRadius gh_radius(const WarpedProfile& profile, double s, double eps = kDefaultEps,
                   double net_fraction = 0.4);

/// sum_{k=1..5} r^k sup|d^k h| + sup|h - delta| over B(0, 10 r) in normal coordinates at x.
struct ConvexCheck {
  double r = 0.0;
  double threshold = 0.0;  ///< 10^{-m}
  double deviation = 0.0;  ///< sup |h - delta|
  std::array<double, 5> derivative_terms{};  ///< r^k sup |d^k h|
  double expression = 0.0;
  bool pass = false;
  bool marginal = false;  ///< expression within a factor 10 of the threshold
};

/// Points where the normal-coordinate metric is available: poles, any point of flat, cylinder
/// and round profiles.
bool convex_supported(const WarpedProfile& profile, double s);

/// Throws CapabilityError at unsupported points, RangeError when 10 r reaches the injectivity
/// radius.
ConvexCheck convex_radius_check(const WarpedProfile& profile, double s, double r);

/// Largest admissible r for convex_radius_check at s (10 r below injectivity and the domain).
double convex_cap(const WarpedProfile& profile, double s);

/// sup of r with expression < 10^{-m}, bisection to relative 1e-3.
RadiusValue convex_radius(const WarpedProfile& profile, double s);

/// Radii capped at 1/(100 D). sr is NaN where convex_supported is false.
struct BoldRadii {
  double cap = 0.0;
  double vr = 0.0;
  double gr = 0.0;
  double sr = 0.0;
  bool sr_available = false;
};

/// Each bold radius is min(radius, cap); when the criterion already holds at the cap the
/// uncapped radius is not computed.
BoldRadii bold_radii(const WarpedProfile& profile, double s, double D, double delta = kDefaultDelta,
                     double eps = kDefaultEps);
double bold_volume_radius(const WarpedProfile& profile, double s, double D,
                          double delta = kDefaultDelta);

struct RadiiReport {
  std::string model;
  double s = 0.0;
  double D = 0.0;
  double delta = kDefaultDelta;
  double eps = kDefaultEps;
  RadiusValue vr, gr, sr;
  bool sr_available = false;
  BoldRadii bold;
  double rm_scale = 0.0;  ///< |Rm|^{-1/2}, +inf where flat
};

/// D = d(p, x) + 10 m along the axis.
double axis_D(const ShrinkerModel& model, double s);

RadiiReport radii_report(const ShrinkerModel& model, double s, double delta = kDefaultDelta,
                         double eps = kDefaultEps);
nlohmann::json to_json(const RadiiReport& report);

struct HarnackReport {
  double s = 0.0;
  double c = 0.0;
  double r = 0.0;  ///< bold_vr(x)
  std::vector<double> neighbor_s;
  std::vector<double> ratios;  ///< bold_vr(y) / r
  double c_emp = 1.0;          ///< min over y of min(ratio, 1/ratio)
  bool pass = false;           ///< every ratio in (c, 1/c)
};

/// Neighbors are axis points at distances c r k/4 (k = -4..4, k != 0) inside the domain.
HarnackReport harnack_check(const WarpedProfile& profile, double s,
                            const std::function<double(double)>& D_of, double c = 0.5,
                            double delta = kDefaultDelta);

struct EquivalenceRow {
  double s = 0.0;
  BoldRadii g;
  BoldRadii gbar;
  double worst = 1.0;  ///< min over all available pairs within g and within gbar of min(a/b, b/a)
};

struct EquivalenceReport {
  std::string model;
  std::vector<EquivalenceRow> rows;
  double c_emp = 1.0;
  bool finite = false;
};

/// bold radii under g and under gbar (chart based at each point, default D).
EquivalenceReport equivalence_report(const ShrinkerModel& model, const std::vector<double>& points,
                                     double delta = kDefaultDelta, double eps = kDefaultEps);
nlohmann::json to_json(const EquivalenceReport& report);

struct DensityReport {
  double theta = 0.5;
  double r = 0.0;
  double value = 0.0;       ///< r^{-2 theta + 4 - m} int_{B(p, r)} bold_vr^{2 theta - 4}
  double value_half = 0.0;  ///< same at r/2
  double exponent = 0.0;    ///< log2(value / value_half)
  double expected_exponent = 0.0;  ///< 4 - 2 theta for a bounded, nearly constant integrand
  bool finite = false;
  bool exponent_ok = false;  ///< |exponent - expected| < 0.1
  std::string proxy = "bold_vr";
};

/// Ball centered at the base point p (a supported ball center). Throws RangeError unless
/// theta in (0, 1).
DensityReport density_integral(const ShrinkerModel& model, double r, double theta = 0.5,
                               double delta = kDefaultDelta);

}  // namespace shrinker
