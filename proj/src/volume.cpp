#include "shrinker/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shrinker/errors.hpp"
#include "shrinker/geodesic.hpp"
#include "shrinker/quadrature.hpp"

namespace shrinker {

namespace {

constexpr double kPi = std::numbers::pi;

// integral of sin^n on [0, psi]
double sin_power_integral(int n, double psi) {
  if (n == 0) return psi;
  if (n == 1) return 1.0 - std::cos(psi);
  return -std::pow(std::sin(psi), n - 1) * std::cos(psi) / n +
         (n - 1.0) / n * sin_power_integral(n - 2, psi);
}

bool zero_end(const WarpedProfile& p, double s) {
  return p.at_end(s, EndKind::SmoothCap) || p.at_end(s, EndKind::Tip);
}

double weight(const Potential* pot, bool weighted, double s) {
  if (!weighted) return 1.0;
  if (!pot) throw ContractError("weighted volume needs a potential");
  return std::exp(-pot->value(s));
}

}  // namespace

double sphere_cap_area(int k, double psi) {
  psi = std::clamp(psi, 0.0, kPi);
  if (k == 0) return psi >= kPi ? 2.0 : 1.0;
  return unit_sphere_area(k - 1) * sin_power_integral(k - 1, psi);
}

bool ball_center_supported(const WarpedProfile& profile, double s) {
  if (!profile.contains(s)) return false;
  return zero_end(profile, s) || profile.homogeneity() != Homogeneity::None;
}

double ball_volume(const WarpedProfile& profile, const Potential* pot, double c, double r,
                   bool weighted, int panels) {
  if (!(r >= 0.0)) throw DomainError("ball_volume: negative radius");
  if (!profile.contains(c)) throw DomainError("ball_volume: center outside domain");
  const int m = profile.dimension();
  const double sphere = unit_sphere_area(m - 1);
  if (r == 0.0) return 0.0;

  if (zero_end(profile, c)) {
    const bool at_lo = std::abs(c - profile.lo()) <= std::abs(c - profile.hi());
    double a = profile.lo();
    double b = profile.hi();
    if (at_lo) {
      b = profile.lo() + r;
      if (b > profile.hi()) {
        if (profile.hi_kind() == EndKind::Open) throw RangeError("ball_volume: ball leaves the truncated domain");
        b = profile.hi();
      }
    } else {
      a = profile.hi() - r;
      if (a < profile.lo()) {
        if (profile.lo_kind() == EndKind::Open) throw RangeError("ball_volume: ball leaves the truncated domain");
        a = profile.lo();
      }
    }
    return sphere * quad::simpson(
                        [&](double s) { return std::pow(profile.phi(s), m - 1) * weight(pot, weighted, s); },
                        a, b, panels);
  }

  if (profile.homogeneity() == Homogeneity::Flat) {
    if (c + r > profile.hi()) throw RangeError("ball_volume: ball leaves the truncated domain");
    if (!weighted) return unit_ball_volume(m) * std::pow(r, m);
    // shells |x| = rho around the origin intersected with the ball centered at distance c
    auto shell = [&](double rho) {
      double psi = kPi;
      if (rho > r - c) {
        const double cs = (rho * rho + c * c - r * r) / (2.0 * rho * c);
        psi = std::acos(std::clamp(cs, -1.0, 1.0));
      }
      return std::pow(rho, m - 1) * sphere_cap_area(m - 1, psi) * weight(pot, true, rho);
    };
    const double lo = std::max(0.0, c - r);
    const double kink = r - c;
    double total = 0.0;
    if (kink > lo) {
      total += quad::gauss_legendre(shell, lo, kink, 64);
      total += quad::gauss_legendre(shell, kink, c + r, 64);
    } else {
      total += quad::gauss_legendre(shell, lo, c + r, 64);
    }
    return total;
  }

  if (profile.homogeneity() == Homogeneity::Cylinder) {
    if (c - r < profile.lo() || c + r > profile.hi())
      throw RangeError("ball_volume: ball leaves the truncated domain");
    const double rho = profile.phi(c);
    // s = c + r sin(t) removes the square-root behaviour at the ends
    auto slab = [&](double t) {
      const double s = c + r * std::sin(t);
      const double half = r * std::cos(t);
      return std::pow(rho, m - 1) * sphere_cap_area(m - 1, half / rho) * weight(pot, weighted, s) *
             r * std::cos(t);
    };
    if (r > kPi * rho) {
      const double tk = std::acos(kPi * rho / r);
      return quad::gauss_legendre(slab, -kPi / 2, -tk, 64) + quad::gauss_legendre(slab, -tk, tk, 64) +
             quad::gauss_legendre(slab, tk, kPi / 2, 64);
    }
    return quad::gauss_legendre(slab, -kPi / 2, kPi / 2, 64);
  }
  throw CapabilityError("ball_volume: center is neither a pole nor on a homogeneous profile");
}

double ball_volume_shooting(const WarpedProfile& profile, double c, double r, int panels) {
  if (!(r > 0.0)) throw DomainError("ball_volume_shooting: radius must be positive");
  if (!profile.contains(c)) throw DomainError("ball_volume_shooting: center outside domain");
  if (c - r <= profile.lo() || c + r >= profile.hi())
    throw RangeError("ball_volume_shooting: ball reaches the end of the domain");
  const int m = profile.dimension();
  GeodesicOptions opt;
  opt.step_fraction = std::min(1e-4, 1e-3 * r / profile.length());
  // s along the boundary decreases from c + r (alpha = 0) to c - r (alpha = pi)
  auto boundary = [&](double alpha) { return exp_slice(profile, c, alpha, r, opt); };
  auto psi_at = [&](double s) {
    double a = 0.0, b = kPi;
    double fa = r + c - s, fb = c - r - s;
    double theta = 0.0;
    int side = 0;
    for (int it = 0; it < 80; ++it) {
      // Illinois step
      double x = (a * fb - b * fa) / (fb - fa);
      if (!(x > a && x < b)) x = 0.5 * (a + b);
      const SlicePoint pt = boundary(x);
      const double fx = pt.s - s;
      theta = pt.theta;
      if (std::abs(fx) < 1e-13 * std::max(1.0, std::abs(s)) || b - a < 1e-14) break;
      if ((fx > 0) == (fa > 0)) {
        a = x;
        fa = fx;
        if (side == -1) fb *= 0.5;
        side = -1;
      } else {
        b = x;
        fb = fx;
        if (side == 1) fa *= 0.5;
        side = 1;
      }
    }
    return theta;
  };
  // s = c + r sin t flattens the square-root edges of psi(s)
  const double v = quad::gauss_legendre(
      [&](double t) {
        const double s = c + r * std::sin(t);
        const double phi = profile.phi(s);
        return std::pow(phi, m - 1) * sphere_cap_area(m - 1, psi_at(s)) * r * std::cos(t);
      },
      -kPi / 2, kPi / 2, panels);
  return v;
}

double total_volume(const WarpedProfile& profile, const Potential* pot, bool weighted, int panels) {
  const int m = profile.dimension();
  return unit_sphere_area(m - 1) *
         quad::simpson(
             [&](double s) { return std::pow(profile.phi(s), m - 1) * weight(pot, weighted, s); },
             profile.lo(), profile.hi(), panels);
}

}  // namespace shrinker
