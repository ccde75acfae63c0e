#include "shrinker/curvature.hpp"

#include <cmath>
#include <sstream>

#include "shrinker/errors.hpp"

namespace shrinker {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Orientation of a smooth pole: +1 at the lower end (phi' = 1), -1 at the upper end.
struct PoleInfo {
  double pole = 0.0;
  double t = 0.0;     // distance from the pole
  double sign = 1.0;
};

bool near_pole(const WarpedProfile& p, double s, PoleInfo& info) {
  if (p.lo_kind() == EndKind::SmoothCap && s - p.lo() < kCapSeriesRadius) {
    info = {p.lo(), s - p.lo(), 1.0};
    return true;
  }
  if (p.hi_kind() == EndKind::SmoothCap && p.hi() - s < kCapSeriesRadius) {
    info = {p.hi(), p.hi() - s, -1.0};
    return true;
  }
  return false;
}

}  // namespace

Potential quadratic_potential(double c) {
  return Potential(
      [c](double s) {
        const Jet x = Jet::variable(s);
        return x * x * 0.25 + c;
      },
      0.0, {"quadratic:" + fmt(c)});
}

Potential constant_potential(double c, double min_location) {
  return Potential([c](double) { return Jet::constant(c); }, min_location, {"constant:" + fmt(c)});
}

CurvatureData curvature_from_sectional(int m, double s, double k_rad, double k_sph) {
  CurvatureData c;
  const double n = m - 1;
  c.s = s;
  c.k_rad = k_rad;
  c.k_sph = k_sph;
  c.ric_rad = n * k_rad;
  c.ric_sph = k_rad + (m - 2) * k_sph;
  c.scalar = c.ric_rad + n * c.ric_sph;
  c.norm_rc = std::sqrt(c.ric_rad * c.ric_rad + n * c.ric_sph * c.ric_sph);
  // each 2-plane e_i ^ e_j contributes four equal-magnitude components
  const double planes_sph = n * (m - 2) / 2.0;
  c.norm_rm = std::sqrt(4.0 * (n * k_rad * k_rad + planes_sph * k_sph * k_sph));
  return c;
}

CurvatureData curvature_at(const WarpedProfile& profile, double s) {
  if (!profile.contains(s)) throw DomainError("curvature_at: s = " + fmt(s) + " outside domain");
  const int m = profile.dimension();
  PoleInfo pole;
  if (near_pole(profile, s, pole)) {
    // phi(pole + sign*t) = t + a3 t^3 + a5 t^5 along the outward direction
    const Jet j = profile.jet(pole.pole);
    const double a3 = pole.sign * j.derivative(3) / 6.0;
    const double a5 = pole.sign * j.derivative(5) / 120.0;
    const double t2 = pole.t * pole.t;
    if (profile.sampled() && pole.t > 0.0) {
      // spline third derivatives are only piecewise constant; use the quotient form instead
    } else {
      const double k_rad = -6.0 * a3 - (20.0 * a5 - 6.0 * a3 * a3) * t2;
      const double k_sph = -6.0 * a3 - (10.0 * a5 - 3.0 * a3 * a3) * t2;
      return curvature_from_sectional(m, s, k_rad, k_sph);
    }
  }
  for (const auto& [end, kind] : {std::pair{profile.lo(), profile.lo_kind()}, std::pair{profile.hi(), profile.hi_kind()}}) {
    if (kind == EndKind::Tip && std::abs(s - end) <= 1e-12 * std::max(1.0, profile.length()))
      throw DomainError("curvature_at: s = " + fmt(s) + " is a singular tip");
  }
  const Jet j = profile.jet(s);
  const double phi = j.value();
  if (!(phi > 0.0)) throw DegenerateProfileError("curvature_at: phi(" + fmt(s) + ") <= 0");
  const double d1 = j[1];
  const double d2 = j.derivative(2);
  const double k_rad = -d2 / phi;
  const double k_sph = (1.0 - d1 * d1) / (phi * phi);
  return curvature_from_sectional(m, s, k_rad, k_sph);
}

HessianData potential_hessian(const WarpedProfile& profile, const Potential& potential, double s) {
  if (!profile.contains(s)) throw DomainError("potential_hessian: s = " + fmt(s) + " outside domain");
  const Jet f = potential.jet(s);
  HessianData h;
  h.hess_rad = f.derivative(2);
  h.grad_sq = f[1] * f[1];
  PoleInfo pole;
  if (near_pole(profile, s, pole)) {
    // f' phi'/phi -> f''(pole) at a smooth pole; first-order series otherwise
    const Jet fp = potential.jet(pole.pole);
    const Jet pj = profile.jet(pole.pole);
    const double a3 = pole.sign * pj.derivative(3) / 6.0;
    const double f2 = fp.derivative(2);
    const double f4 = fp.derivative(4);
    const double t2 = pole.t * pole.t;
    // f = f0 + f2 t^2/2 + f4 t^4/24 along t; phi'/phi = 1/t + 2 a3 t + O(t^3)
    h.hess_sph = f2 + (f4 / 6.0 + 2.0 * a3 * f2) * t2;
    return h;
  }
  const Jet p = profile.jet(s);
  if (!(p.value() > 0.0)) throw DegenerateProfileError("potential_hessian: phi <= 0");
  h.hess_sph = f[1] * p[1] / p.value();
  return h;
}

}  // namespace shrinker
