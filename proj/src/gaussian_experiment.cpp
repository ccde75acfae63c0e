#include "shrinker/gaussian_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "shrinker/errors.hpp"
#include "shrinker/slice_graph.hpp"

namespace shrinker {

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoOverSqrtPi = 2.0 / std::sqrt(kPi);

// Safeguarded Newton on a decreasing function of A; log form below x = 1 keeps the tail accurate.
double solve_erfc(double x) {
  const bool tail = x < 1.0;
  const double lx = std::log(x);
  auto g = [&](double A) { return tail ? std::log(std::erfc(A)) - lx : std::erfc(A) - x; };
  auto dg = [&](double A) {
    const double e = kTwoOverSqrtPi * std::exp(-A * A);
    return tail ? -e / std::erfc(A) : -e;
  };
  double lo = -6.0;
  double hi = 27.0;
  double A = tail ? std::sqrt(std::max(0.0, -lx)) * 0.9 : (1.0 - x) * std::sqrt(kPi) / 2.0;
  A = std::clamp(A, lo, hi);
  for (int it = 0; it < 300; ++it) {
    const double v = g(A);
    if (v == 0.0) return A;
    if (v > 0.0) lo = A;
    else hi = A;
    double next = A - v / dg(A);
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::abs(next - A) <= 1e-16 * (1.0 + std::abs(A))) return next;
    A = next;
  }
  return A;
}

// A as a jet in x from A' = -(sqrt(pi)/2) e^{A^2}, by Picard iteration.
Jet erfc_inverse_jet(double A0) {
  Jet A = Jet::constant(A0);
  for (int it = 0; it < Jet::kOrder + 1; ++it) {
    const Jet g = exp(A * A) * (-std::sqrt(kPi) / 2.0);
    Jet next = Jet::constant(A0);
    for (std::size_t k = 0; k + 1 < Jet::kSize; ++k) next[k + 1] = g[k] / static_cast<double>(k + 1);
    A = next;
  }
  return A;
}

double d1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

// One Richardson step on top of the 5-point rules.
double d1r(const std::function<double(double)>& f, double x, double h) {
  return (16.0 * d1(f, x, 0.5 * h) - d1(f, x, h)) / 15.0;
}

double d2r(const std::function<double(double)>& f, double x, double h) {
  return (16.0 * d2(f, x, 0.5 * h) - d2(f, x, h)) / 15.0;
}

// A changes on the scale B, so the stencil step follows it.
constexpr double kStepPerB = 6e-3;

LimitRow limit_row(double x) {
  const ErfcTriple t = erfc_inverse_tail(x);
  const double L = std::sqrt(std::log(1.0 / x));
  return {x, t.A / L, t.B / (2.0 * x * L)};
}

}  // namespace

ErfcTriple erfc_inverse_tail(double x) {
  if (!(x > 0.0) || !(x < 2.0)) throw DomainError("erfc_inverse: x must lie in (0, 2)");
  const double A = solve_erfc(x);
  return {x, A, kTwoOverSqrtPi * std::exp(-A * A)};
}

ErfcTriple erfc_inverse(double x) {
  if (!(x > 1e-12) || !(x < 2.0 - 1e-12)) throw DomainError("erfc_inverse: x outside (1e-12, 2 - 1e-12)");
  const ErfcTriple t = erfc_inverse_tail(x);
  if (std::abs(std::erfc(t.A) - x) >= 1e-12) throw ConvergenceError("erfc_inverse: residual too large", x, x, t.A);
  return t;
}

std::vector<double> erfc_grid(int n) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(0.01 + 1.98 * i / std::max(1, n - 1));
  return xs;
}

ErfcReport erfc_suite(const std::vector<double>& x_grid, double x_limit) {
  ErfcReport rep;
  const auto A = [](double x) { return erfc_inverse(x).A; };
  const auto B = [](double x) { return erfc_inverse(x).B; };
  for (double x : x_grid) {
    const ErfcTriple t = erfc_inverse(x);
    const double h = kStepPerB * t.B;
    const double a1 = -1.0 / t.B;
    rep.dA = std::max(rep.dA, std::abs(d1r(A, x, h) - a1));
    rep.d2A = std::max(rep.d2A, std::abs(d2r(A, x, h) - 2.0 * t.A / (t.B * t.B)));
    rep.dB = std::max(rep.dB, std::abs(d1r(B, x, h) - 2.0 * t.A));
    rep.d2B = std::max(rep.d2B, std::abs(d2r(B, x, h) - 2.0 * a1));
  }
  const ConformalGaussian cg = build_conformal_gaussian(4);
  const auto phi = [&](double s) { return cg.profile.phi(s); };
  for (int i = 0; i <= 400; ++i) {
    const double s = 0.02 + (cg.s_max - 0.04) * i / 400.0;
    const ErfcTriple t = erfc_inverse_tail(cg.a * s);
    const double h = std::min({kStepPerB * t.B / cg.a, s / 4.0, (cg.s_max - s) / 4.0});
    rep.dphi = std::max(rep.dphi, std::abs(d1r(phi, s, h) - (2.0 * t.A * t.A - 1.0)));
  }
  rep.limit = limit_row(x_limit);
  for (double x : {1e-6, 1e-12, 1e-100, 1e-300}) rep.tail.push_back(limit_row(x));
  rep.identities_ok = rep.dA < 1e-6 && rep.d2A < 1e-6 && rep.dB < 1e-6 && rep.d2B < 1e-6 && rep.dphi < 1e-8;
  rep.limits_ok = std::abs(rep.limit.ratio_A - 1.0) <= 0.02 && std::abs(rep.limit.ratio_B - 1.0) <= 0.02;
  return rep;
}

double ConformalGaussian::s_of_r(double r) const { return std::erfc(std::sqrt(beta / 2.0) * r) / a; }

double ConformalGaussian::r_of_s(double s) const {
  return erfc_inverse_tail(a * s).A * std::sqrt(2.0 / beta);
}

ConformalGaussian build_conformal_gaussian(int m) {
  if (m < 3) throw DimensionError("conformal Gaussian needs m >= 3");
  const double beta = 1.0 / (2.0 * (m - 2));
  const double a = std::sqrt(2.0 * beta / kPi);
  const double s_max = 1.0 / a;
  auto eval = [a](double s) -> Jet {
    const double x = a * s;
    if (x < 1e-300) return Jet::constant(0.0);
    const ErfcTriple t = erfc_inverse_tail(std::min(x, 1.0));
    const Jet A = erfc_inverse_jet(t.A);
    const Jet AB = A * exp(-(A * A)) * kTwoOverSqrtPi;
    return AB.compose(Jet::variable(s) * a) / a;
  };
  WarpedProfile prof("conformal-gaussian", m, 0.0, s_max, EndKind::Tip, EndKind::SmoothCap, eval);
  prof.set_slope_evaluator([a](double s) -> std::array<double, 2> {
    const double x = a * s;
    if (x < 1e-300) return {0.0, std::numeric_limits<double>::infinity()};
    const ErfcTriple t = erfc_inverse_tail(std::min(x, 1.0));
    return {t.A * t.B / a, 2.0 * t.A * t.A - 1.0};
  });

  ConformalGaussian cg{m, beta, a, s_max, 0.0, std::erfc(1.0 / std::sqrt(2.0)) / a, std::move(prof)};
  // phi(s) - s is positive just after the tip; bracket its first zero
  auto gap = [&](double s) { return cg.profile.phi(s) - s; };
  double lo = 1e-6;
  if (!(gap(lo) > 0.0)) throw ConvergenceError("conformal Gaussian: phi(s) >= s fails near the tip", 0, lo, gap(lo));
  double hi = lo;
  const double step = 1e-3 * s_max;
  while (hi < s_max && gap(hi) > 0.0) {
    lo = hi;
    hi = std::min(s_max, hi + step);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  cg.s0 = lo;
  return cg;
}

std::vector<double> eps_grid(const ConformalGaussian& cg, int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(cg.s0 / 4.0 * k / (n + 1));
  return out;
}

double threshold_L(const ConformalGaussian& cg) { return cg.r_of_s(cg.s0 / 4.0); }

namespace {

// c > 0 geodesics from (eps, 0) reaching theta = pi at s = eps, by shooting over alpha.
void connecting_geodesics(const ConformalGaussian& cg, double eps, AntipodalGap& out) {
  GeodesicOptions opt;
  opt.step_fraction = 1e-3;
  const double budget = 3.0 * cg.s_max;
  const int n = 96;
  std::vector<double> alpha(n), miss(n, std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k < n; ++k) {
    alpha[k] = kPi * (k + 0.5) / n;
    const Shot sh = shoot(cg.profile, eps, alpha[k], kPi, budget, opt);
    if (sh.hit) miss[k] = sh.s_end - eps;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < n; ++k) {
    if (!std::isfinite(miss[k]) || !std::isfinite(miss[k + 1]) || miss[k] * miss[k + 1] > 0.0) continue;
    double lo = alpha[k], hi = alpha[k + 1], flo = miss[k];
    Shot sh{};
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      sh = shoot(cg.profile, eps, mid, kPi, budget, opt);
      if (!sh.hit) break;
      const double v = sh.s_end - eps;
      if (std::abs(v) < 1e-11) break;
      if (v * flo > 0.0) {
        lo = mid;
        flo = v;
      } else {
        hi = mid;
      }
    }
    if (sh.hit && std::abs(sh.s_end - eps) < 1e-8) {
      ++out.connecting_count;
      best = std::min(best, sh.length);
    }
  }
  out.connecting_found = out.connecting_count > 0;
  out.connecting_length = out.connecting_found ? best : 0.0;
}

}  // namespace

AntipodalGap antipodal_gap(const ConformalGaussian& cg, double eps, int graph_ns, int graph_nt) {
  if (!(eps > 0.0) || !(eps < cg.s0 / 4.0)) throw RangeError("antipodal_gap: eps must lie in (0, s0/4)");
  if (eps <= 2.0 * kTipCollar) throw RangeError("antipodal_gap: eps too close to the tip collar");
  AntipodalGap out;
  out.eps = eps;
  out.through_tip = 2.0 * eps;

  GeodesicOptions opt;
  opt.exclude_caps = true;
  opt.cap_margin = kTipCollar;
  out.path = geodesic_between(cg.profile, {eps, 0.0}, {eps, kPi}, opt);
  out.L_geo = out.path.length;
  out.kind = out.path.kind;
  out.gap = out.L_geo - out.through_tip;

  // graph on [collar, ~2 eps] x [0, pi] with eps on a node row
  const int k = (graph_ns - 1) / 2;
  const double ds = (eps - kTipCollar) / k;
  const double s_top = kTipCollar + (graph_ns - 1) * ds;
  const SliceGraph graph(cg.profile, kTipCollar, s_top, kPi, graph_ns, graph_nt, 8);
  out.graph_length = graph.distance(graph.node(eps, 0.0), graph.node(eps, kPi));
  out.graph_resolution = graph.resolution();
  out.graph_agrees = std::abs(out.graph_length - out.L_geo) <= 2.0 * out.graph_resolution;

  connecting_geodesics(cg, eps, out);
  return out;
}

}  // namespace shrinker
