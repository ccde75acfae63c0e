#include "shrinker/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shrinker/errors.hpp"

namespace shrinker {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_dimension(int m) {
  if (m < 2) throw DimensionError("warped profiles need dimension m >= 2");
}

}  // namespace

WarpedProfile::WarpedProfile(std::string name, int m, double lo, double hi, EndKind lo_kind,
                             EndKind hi_kind, Evaluator phi, int derivative_order,
                             Homogeneity homogeneity)
    : name_(std::move(name)),
      m_(m),
      lo_(lo),
      hi_(hi),
      lo_kind_(lo_kind),
      hi_kind_(hi_kind),
      eval_(std::move(phi)),
      order_(derivative_order),
      homogeneity_(homogeneity) {
  check_dimension(m);
  if (!(hi > lo)) throw DomainError("profile domain must satisfy hi > lo");
}

Jet WarpedProfile::jet(double s) const {
  if (!contains(s)) {
    std::ostringstream os;
    os << "s = " << s << " outside profile domain [" << lo_ << ", " << hi_ << "]";
    throw DomainError(os.str());
  }
  return eval_(std::clamp(s, lo_, hi_));
}

std::array<double, 2> WarpedProfile::phi_dphi(double s) const {
  if (!slope_) {
    const Jet j = jet(s);
    return {j.value(), j[1]};
  }
  if (!contains(s)) {
    std::ostringstream os;
    os << "s = " << s << " outside profile domain [" << lo_ << ", " << hi_ << "]";
    throw DomainError(os.str());
  }
  return slope_(std::clamp(s, lo_, hi_));
}

bool WarpedProfile::contains(double s) const {
  const double slack = 1e-12 * std::max(1.0, hi_ - lo_);
  return s >= lo_ - slack && s <= hi_ + slack;
}

bool WarpedProfile::at_end(double s, EndKind kind) const {
  const double slack = 1e-12 * std::max(1.0, hi_ - lo_);
  return (lo_kind_ == kind && std::abs(s - lo_) <= slack) ||
         (hi_kind_ == kind && std::abs(s - hi_) <= slack);
}

bool WarpedProfile::nearest_zero_end(double s, double& end, double& distance) const {
  bool found = false;
  distance = std::numeric_limits<double>::infinity();
  if (lo_kind_ != EndKind::Open && s - lo_ < distance) {
    end = lo_;
    distance = s - lo_;
    found = true;
  }
  if (hi_kind_ != EndKind::Open && hi_ - s < distance) {
    end = hi_;
    distance = hi_ - s;
    found = true;
  }
  return found;
}

WarpedProfile flat_profile(int m, double s_max) {
  WarpedProfile p("flat", m, 0.0, s_max, EndKind::SmoothCap, EndKind::Open,
                  [](double s) { return Jet::variable(s); }, Jet::kOrder, Homogeneity::Flat);
  p.set_expression({"flat"});
  p.set_slope_evaluator([](double s) -> std::array<double, 2> { return {s, 1.0}; });
  return p;
}

WarpedProfile round_profile(int m, double radius) {
  if (!(radius > 0.0)) throw DomainError("round profile radius must be positive");
  WarpedProfile p(
      "round", m, 0.0, std::numbers::pi * radius, EndKind::SmoothCap, EndKind::SmoothCap,
      [radius](double s) { return radius * sin(Jet::variable(s) / radius); });
  p.set_expression({"round:" + fmt_double(radius)});
  p.set_slope_evaluator([radius](double s) -> std::array<double, 2> {
    return {radius * std::sin(s / radius), std::cos(s / radius)};
  });
  return p;
}

WarpedProfile cylinder_profile(int m, double radius, double lo, double hi) {
  if (!(radius > 0.0)) throw DomainError("cylinder radius must be positive");
  WarpedProfile p("cylinder", m, lo, hi, EndKind::Open, EndKind::Open,
                  [radius](double) { return Jet::constant(radius); }, Jet::kOrder,
                  Homogeneity::Cylinder);
  p.set_expression({"cylinder:" + fmt_double(radius)});
  p.set_slope_evaluator([radius](double) -> std::array<double, 2> { return {radius, 0.0}; });
  return p;
}

WarpedProfile sampled_profile(std::string name, int m, double lo, double hi, EndKind lo_kind,
                              EndKind hi_kind, std::vector<double> samples) {
  if (samples.size() < 5) throw ContractError("sampled profile needs at least 5 samples");
  const double h = (hi - lo) / static_cast<double>(samples.size() - 1);
  const double slope_lo = lo_kind == EndKind::SmoothCap ? 1.0 : endpoint_slope(samples, h, true);
  const double slope_hi = hi_kind == EndKind::SmoothCap ? -1.0 : endpoint_slope(samples, h, false);
  auto spline = std::make_shared<CubicSpline>(lo, hi, samples, slope_lo, slope_hi);
  WarpedProfile p(std::move(name), m, lo, hi, lo_kind, hi_kind,
                  [spline](double s) {
                    const auto d = spline->evaluate(s);
                    return Jet::from_derivatives({d[0], d[1], d[2], d[3], 0.0, 0.0});
                  },
                  3);
  p.set_samples(std::move(samples));
  return p;
}

WarpedProfile resample(const WarpedProfile& analytic, int nodes) {
  std::vector<double> samples(static_cast<std::size_t>(nodes));
  const double h = analytic.length() / (nodes - 1);
  for (int i = 0; i < nodes; ++i) samples[i] = analytic.phi(analytic.lo() + i * h);
  return sampled_profile(analytic.name() + "-sampled", analytic.dimension(), analytic.lo(),
                         analytic.hi(), analytic.lo_kind(), analytic.hi_kind(), std::move(samples));
}

ProfileCheck check_profile(const WarpedProfile& profile, int grid) {
  ProfileCheck out;
  const double lo = profile.lo();
  const double hi = profile.hi();
  const double h = (hi - lo) / grid;
  for (int i = 1; i < grid; ++i) {
    if (!(profile.phi(lo + i * h) > 0.0)) out.positive_interior = false;
  }
  const double cap_tol = profile.sampled() ? 1e-4 : 1e-8;
  auto cap_check = [&](double s, EndKind kind, double expected_slope) {
    if (kind != EndKind::SmoothCap) return;
    const Jet j = profile.jet(s);
    const double err = std::max(std::abs(j.value()), std::abs(j[1] - expected_slope));
    out.cap_error = std::max(out.cap_error, err);
    if (err > cap_tol) out.caps_ok = false;
  };
  cap_check(lo, profile.lo_kind(), 1.0);
  cap_check(hi, profile.hi_kind(), -1.0);

  // phi' against a five-point stencil of phi, away from the endpoints
  const double step = 1e-3 * (hi - lo) / grid;
  for (int i = 2; i < grid - 1; ++i) {
    const double s = lo + i * h;
    const double fd = (-profile.phi(s + 2 * step) + 8 * profile.phi(s + step) - 8 * profile.phi(s - step) +
                       profile.phi(s - 2 * step)) /
                      (12 * step);
    const double exact = profile.dphi(s);
    const double rel = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
    out.derivative_error = std::max(out.derivative_error, rel);
  }
  return out;
}

double unit_sphere_area(int k) {
  const double n = k + 1;
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

double unit_ball_volume(int m) {
  return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

}  // namespace shrinker
