#pragma once

#include <vector>

#include "shrinker/geodesic.hpp"
#include "shrinker/profile.hpp"

namespace shrinker {

/// A = erfc^{-1}(x) and B = (2/sqrt(pi)) e^{-A^2}.
struct ErfcTriple {
  double x = 1.0;
  double A = 0.0;
  double B = 0.0;
};

/// Newton with bisection fallback; throws DomainError outside (1e-12, 2 - 1e-12).
ErfcTriple erfc_inverse(double x);

/// Same solver without the range guard, for tail diagnostics down to x ~ 1e-300.
ErfcTriple erfc_inverse_tail(double x);

struct LimitRow {
  double x = 0.0;
  double ratio_A = 0.0;  ///< A / sqrt(log(1/x))
  double ratio_B = 0.0;  ///< B / (2 x sqrt(log(1/x)))
};

struct ErfcReport {
  // worst residual of each identity against 5-point stencils
  double dA = 0.0;   ///< A' = -1/B
  double d2A = 0.0;  ///< A'' = 2A/B^2
  double dB = 0.0;   ///< B' = 2A
  double d2B = 0.0;  ///< B'' = 2A'
  double dphi = 0.0; ///< phi'(s) = 2A(as)^2 - 1 on the m = 4 profile
  LimitRow limit;    ///< ratios at the limit point
  std::vector<LimitRow> tail;  ///< ratios deeper in the tail (1e-6, 1e-12, 1e-100, 1e-300)
  bool identities_ok = false;  ///< four identities < 1e-6 and phi' < 1e-8
  bool limits_ok = false;      ///< both ratios within 2% of 1 at the limit point
};

/// Uniform grid of n points on [0.01, 1.99].
std::vector<double> erfc_grid(int n = 199);

ErfcReport erfc_suite(const std::vector<double>& x_grid, double x_limit = 1e-6);

/// R^m with the metric e^{-beta r^2} g_E, beta = 1/(2(m-2)), written as ds^2 + phi(s)^2 g_{S^{m-1}}
/// with s = int_r^inf e^{-beta rho^2/2} d rho. Infinity sits at the tip s = 0; the origin at s_max.
struct ConformalGaussian {
  int m = 4;
  double beta = 0.0;
  double a = 0.0;      ///< sqrt(2 beta / pi)
  double s_max = 0.0;  ///< s(0) = 1/a
  double s0 = 0.0;     ///< end of the first interval where phi(s) >= s
  double s_star = 0.0; ///< phi'(s_star) = 0
  WarpedProfile profile;

  double s_of_r(double r) const;
  double r_of_s(double s) const;
};

/// Throws DimensionError for m < 3.
ConformalGaussian build_conformal_gaussian(int m);

/// Width of the collar around the tip treated as an obstacle.
inline constexpr double kTipCollar = 1e-4;

struct AntipodalGap {
  double eps = 0.0;
  double L_geo = 0.0;        ///< shortest path from (eps,0) to (eps,pi) staying in s >= collar
  PathKind kind = PathKind::Obstacle;
  double through_tip = 0.0;  ///< 2 eps, the c -> 0+ limit of the Clairaut family
  double gap = 0.0;          ///< L_geo - 2 eps
  GeodesicPath path;
  // independent oracle
  double graph_length = 0.0;
  double graph_resolution = 0.0;
  bool graph_agrees = false;  ///< |graph - L_geo| <= 2 resolution units
  // genuine geodesics with c > 0 joining the two points (not restricted to the eps-window)
  bool connecting_found = false;
  int connecting_count = 0;
  double connecting_length = 0.0;  ///< shortest of them, when found
};

/// Throws RangeError unless 0 < eps < s0/4.
AntipodalGap antipodal_gap(const ConformalGaussian& cg, double eps, int graph_ns = 800,
                           int graph_nt = 400);

/// eps_k = (s0/4) k / (n+1), k = 1..n.
std::vector<double> eps_grid(const ConformalGaussian& cg, int n = 10);

/// Euclidean radius r(s0/4) beyond which the eps-window of the construction applies.
double threshold_L(const ConformalGaussian& cg);

}  // namespace shrinker
