#pragma once

#include "shrinker/curvature.hpp"
#include "shrinker/profile.hpp"

namespace shrinker {

/// Area of the geodesic ball of angular radius psi in the unit sphere S^k.
double sphere_cap_area(int k, double psi);

/// Volume of the geodesic ball B(center, r).
///
/// `center_s` is the arclength coordinate of the center. Supported centers: a pole (zero of phi
/// at an endpoint), any point of a Flat profile (center at distance center_s from the origin),
/// any point of a Cylinder profile. With `weighted` the measure is e^{-f} dv.
double ball_volume(const WarpedProfile& profile, const Potential* potential, double center_s,
                   double r, bool weighted, int panels = 4096);

/// Unweighted volume of B(center, r) for an arbitrary interior center of an analytic profile.
/// The boundary sphere is traced with exp_slice and the ball is integrated slice by slice, so
/// r must stay below the injectivity radius. Throws RangeError when the ball reaches a zero of
/// phi or an end of the domain.
double ball_volume_shooting(const WarpedProfile& profile, double center_s, double r, int panels = 6);

/// True when ball_volume accepts this center.
bool ball_center_supported(const WarpedProfile& profile, double center_s);

/// Total volume (or e^{-f} mass) of the profile domain.
double total_volume(const WarpedProfile& profile, const Potential* potential, bool weighted,
                    int panels = 4096);

}  // namespace shrinker
