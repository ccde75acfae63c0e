#include "shrinker/points.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shrinker/errors.hpp"

namespace shrinker {

namespace {

constexpr double kPi = std::numbers::pi;

double norm3(const std::array<double, 3>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

bool zero_end(const WarpedProfile& p, double s) {
  return p.at_end(s, EndKind::SmoothCap) || p.at_end(s, EndKind::Tip);
}

}  // namespace

double direction_angle(const ManifoldPoint& a, const ManifoldPoint& b) {
  const double dot = a.omega[0] * b.omega[0] + a.omega[1] * b.omega[1] + a.omega[2] * b.omega[2];
  // atan2 form keeps precision for nearly parallel directions
  const std::array<double, 3> cr{a.omega[1] * b.omega[2] - a.omega[2] * b.omega[1],
                                 a.omega[2] * b.omega[0] - a.omega[0] * b.omega[2],
                                 a.omega[0] * b.omega[1] - a.omega[1] * b.omega[0]};
  return std::atan2(norm3(cr), dot);
}

ManifoldPoint exp_point(const WarpedProfile& profile, double s_q, const std::array<double, 3>& v,
                        const GeodesicOptions& options) {
  const double t = norm3(v);
  if (t == 0.0) return {s_q, {1.0, 0.0, 0.0}};
  if (zero_end(profile, s_q)) {
    const bool lo = std::abs(s_q - profile.lo()) <= std::abs(s_q - profile.hi());
    const double s = lo ? s_q + t : s_q - t;
    if (!profile.contains(s)) throw RangeError("exp_point: ray leaves the domain");
    return {s, {v[0] / t, v[1] / t, v[2] / t}};
  }
  const double vt = std::hypot(v[1], v[2]);
  const double alpha = std::atan2(vt, v[0]);
  const SlicePoint end = exp_slice(profile, s_q, alpha, t, options);
  std::array<double, 3> et{0.0, 1.0, 0.0};
  if (vt > 0.0) et = {0.0, v[1] / vt, v[2] / vt};
  const double c = std::cos(end.theta);
  const double sn = std::sin(end.theta);
  return {end.s, {c, sn * et[1], sn * et[2]}};
}

double point_distance(const WarpedProfile& profile, const ManifoldPoint& a, const ManifoldPoint& b,
                      const GeodesicOptions& options) {
  if (zero_end(profile, a.s) || zero_end(profile, b.s)) return std::abs(a.s - b.s);
  return slice_distance(profile, a.s, b.s, direction_angle(a, b), options);
}

double halton(unsigned index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

std::array<double, 3> halton_ball(unsigned index, double R, unsigned b0, unsigned b1, unsigned b2) {
  const double rad = R * std::cbrt(halton(index, b0));
  const double z = 2.0 * halton(index, b1) - 1.0;
  const double ph = 2.0 * kPi * halton(index, b2);
  const double w = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rad * z, rad * w * std::cos(ph), rad * w * std::sin(ph)};
}

std::vector<std::array<double, 3>> fibonacci_sphere(int n) {
  std::vector<std::array<double, 3>> out;
  if (n == 1) return {{1.0, 0.0, 0.0}};
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(1.0 - z * z);
    out.push_back({z, r * std::cos(golden * i), r * std::sin(golden * i)});
  }
  return out;
}

std::vector<std::array<double, 3>> ball_net_vectors(double R, double eps) {
  if (!(eps > 0.0) || !(R > 0.0)) throw ContractError("ball_net_vectors: R and eps must be positive");
  std::vector<std::array<double, 3>> out{{0.0, 0.0, 0.0}};
  const int shells = static_cast<int>(std::ceil(R / eps));
  for (int k = 1; k <= shells; ++k) {
    const double r = R * k / shells;
    const int n = std::max(4, static_cast<int>(std::ceil(4.0 * kPi * r * r / (eps * eps))));
    for (const auto& d : fibonacci_sphere(n)) out.push_back({r * d[0], r * d[1], r * d[2]});
  }
  return out;
}

}  // namespace shrinker
