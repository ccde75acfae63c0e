#pragma once

#include <array>
#include <vector>

#include "shrinker/geodesic.hpp"
#include "shrinker/profile.hpp"

namespace shrinker {

/// Point of a rotationally symmetric manifold: arclength s and a direction on S^{m-1}.
///
/// Directions live in a fixed 3-dimensional subspace of R^m. Pair distances depend only on
/// (s_x, s_y, angle), and a 3D subspace already realizes every angle in [0, pi], so sampled
/// configurations cover the full m-dimensional ball.
struct ManifoldPoint {
  double s = 0.0;
  std::array<double, 3> omega{1.0, 0.0, 0.0};
};

/// Angle between the sphere directions of two points.
double direction_angle(const ManifoldPoint& a, const ManifoldPoint& b);

/// exp_q(v) for q on the axis at arclength s_q with direction e_0.
/// v = (radial component, two sphere components); at a pole all three are spatial.
ManifoldPoint exp_point(const WarpedProfile& profile, double s_q, const std::array<double, 3>& v,
                        const GeodesicOptions& options = {});

double point_distance(const WarpedProfile& profile, const ManifoldPoint& a, const ManifoldPoint& b,
                      const GeodesicOptions& options = {});

/// Radical inverse of `index` in the given base.
double halton(unsigned index, unsigned base);

/// Deterministic quasi-random vector in the 3D ball of radius R (Halton bases b0, b1, b2).
std::array<double, 3> halton_ball(unsigned index, double R, unsigned b0 = 2, unsigned b1 = 3,
                                  unsigned b2 = 5);

/// n nearly uniform unit vectors (Fibonacci lattice).
std::vector<std::array<double, 3>> fibonacci_sphere(int n);

/// Tangent vectors of a shells-times-directions net of the 3D ball of radius R with spacing eps.
std::vector<std::array<double, 3>> ball_net_vectors(double R, double eps);

}  // namespace shrinker
