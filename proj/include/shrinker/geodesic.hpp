#pragma once

#include <string>
#include <vector>

#include "shrinker/profile.hpp"

namespace shrinker {

/// Point of the 2D slice ds^2 + phi(s)^2 dtheta^2.
struct SlicePoint {
  double s = 0.0;
  double theta = 0.0;
};

struct GeodesicOptions {
  bool exclude_caps = false;
  double cap_margin = 1e-4;     ///< width of the excluded collar around a zero of phi
  bool exhaustive = true;       ///< full Clairaut scan; otherwise secant from a chord guess
  int scan_points = 96;
  int bisection_budget = 100;
  double tolerance = 1e-11;     ///< on the endpoint s-coordinate
  double step_fraction = 1e-4;  ///< base RK4 step as a fraction of the domain length
};

enum class PathKind { Radial, Clairaut, ThroughCap, Obstacle };

std::string to_string(PathKind kind);

/// A path in the slice together with its conservation diagnostics.
struct GeodesicPath {
  PathKind kind = PathKind::Radial;
  std::vector<double> t;      ///< arclength parameter
  std::vector<SlicePoint> states;
  double clairaut_constant = 0.0;  ///< c = phi^2 theta'
  double alpha = 0.0;              ///< initial angle from d/ds
  double length = 0.0;
  double min_s = 0.0;
  double max_s = 0.0;
  double energy_error = 0.0;    ///< sup |s'^2 + phi^2 theta'^2 - 1|
  double clairaut_error = 0.0;  ///< sup |phi^2 theta' - c|
};

/// Result of one initial-value shot toward the meridian theta = target.
struct Shot {
  bool hit = false;        ///< reached theta = target within the length budget
  bool left_domain = false;
  double s_end = 0.0;
  double length = 0.0;
  double min_s = 0.0;
  double max_s = 0.0;
  double energy_error = 0.0;
  double clairaut_error = 0.0;
};

/// Integrates the geodesic from (s0, 0) with initial angle alpha (measured from d/ds,
/// alpha in (0, pi)) until theta reaches `target` or the length exceeds `budget`.
Shot shoot(const WarpedProfile& profile, double s0, double alpha, double target, double budget,
           const GeodesicOptions& options = {}, GeodesicPath* record = nullptr);

/// Endpoint of the unit-speed geodesic of length t from (s0, 0) at angle alpha in [0, pi].
/// Radial rays through a smooth pole continue on the opposite meridian (theta = pi).
SlicePoint exp_slice(const WarpedProfile& profile, double s0, double alpha, double t,
                     const GeodesicOptions& options = {});

/// Shortest path between two slice points found among radial, Clairaut and through-cap
/// candidates; with exclude_caps the collar around zeros of phi is an obstacle.
GeodesicPath geodesic_between(const WarpedProfile& profile, SlicePoint p, SlicePoint q,
                              const GeodesicOptions& options = {});

/// Riemannian distance between points at arclength s1, s2 whose sphere directions make
/// angle `angle`; any two such points lie in one totally geodesic slice.
double slice_distance(const WarpedProfile& profile, double s1, double s2, double angle,
                      const GeodesicOptions& options = {});

/// Shortest path in {|s - s_zero| >= margin} wrapping the collar: two tangent Clairaut arcs
/// plus the circle s = s_c. Returns false when the collar is not touched by this construction.
bool obstacle_path(const WarpedProfile& profile, double s_c, double s_p, double s_q, double dtheta,
                   GeodesicPath& out);

}  // namespace shrinker
