#include "shrinker/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "shrinker/errors.hpp"
#include "shrinker/quadrature.hpp"

namespace shrinker {

namespace {

constexpr double kPi = std::numbers::pi;

// (s, theta, s', theta')
struct State {
  double s, th, sig, om;
};

struct Rhs {
  const WarpedProfile& profile;
  bool ok = true;

  State operator()(const State& y) {
    if (!profile.contains(y.s)) {
      ok = false;
      return {0, 0, 0, 0};
    }
    const auto [phi, dphi] = profile.phi_dphi(y.s);
    if (!(phi > 0.0)) {
      ok = false;
      return {0, 0, 0, 0};
    }
    return {y.sig, y.om, phi * dphi * y.om * y.om, -2.0 * dphi * y.sig * y.om / phi};
  }
};

State axpy(const State& y, double h, const State& k) {
  return {y.s + h * k.s, y.th + h * k.th, y.sig + h * k.sig, y.om + h * k.om};
}

std::optional<State> rk4(Rhs& f, const State& y, double h) {
  f.ok = true;
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * h, k1));
  const State k3 = f(axpy(y, 0.5 * h, k2));
  const State k4 = f(axpy(y, h, k3));
  if (!f.ok) return std::nullopt;
  return State{y.s + h / 6.0 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s),
               y.th + h / 6.0 * (k1.th + 2 * k2.th + 2 * k3.th + k4.th),
               y.sig + h / 6.0 * (k1.sig + 2 * k2.sig + 2 * k3.sig + k4.sig),
               y.om + h / 6.0 * (k1.om + 2 * k2.om + 2 * k3.om + k4.om)};
}

bool is_zero_end(const WarpedProfile& p, double s) {
  return p.at_end(s, EndKind::SmoothCap) || p.at_end(s, EndKind::Tip);
}

double reduce_angle(double a) {
  a = std::fmod(std::abs(a), 2.0 * kPi);
  return a > kPi ? 2.0 * kPi - a : a;
}

// Integrates from y0 for at most `budget` arclength, stopping early at theta = target.
// Returns the shot and the final state.
Shot integrate(const WarpedProfile& profile, State y, double c, double budget, double target,
               const GeodesicOptions& opt, GeodesicPath* rec, State* final_state) {
  Rhs f{profile};
  Shot shot;
  shot.min_s = shot.max_s = y.s;
  const double h0 = opt.step_fraction * profile.length();
  const double h_floor = 1e-12 * profile.length();
  double t = 0.0;
  auto track = [&](const State& st, double tt) {
    const double phi = profile.phi(st.s);
    shot.energy_error =
        std::max(shot.energy_error, std::abs(st.sig * st.sig + phi * phi * st.om * st.om - 1.0));
    shot.clairaut_error = std::max(shot.clairaut_error, std::abs(phi * phi * st.om - c));
    shot.min_s = std::min(shot.min_s, st.s);
    shot.max_s = std::max(shot.max_s, st.s);
    if (rec) {
      rec->t.push_back(tt);
      rec->states.push_back({st.s, st.th});
    }
  };
  track(y, 0.0);
  while (t < budget) {
    const auto [phi, dphi] = profile.phi_dphi(y.s);
    double h = std::min({h0, budget / 64.0, 0.05 * phi / std::max(1.0, std::abs(dphi))});
    if (h < h_floor) {
      shot.left_domain = true;
      break;
    }
    h = std::min(h, budget - t);
    auto next = rk4(f, y, h);
    if (!next) {
      shot.left_domain = true;
      break;
    }
    if (std::isfinite(target) && next->th >= target) {
      // Newton on the step length so that theta lands on the target meridian
      double hs = (target - y.th) / y.om;
      State z = y;
      for (int it = 0; it < 8; ++it) {
        auto trial = rk4(f, y, hs);
        if (!trial) break;
        z = *trial;
        const double err = z.th - target;
        hs -= err / z.om;
        if (std::abs(err) < 1e-15) break;
      }
      if (auto last = rk4(f, y, hs)) z = *last;
      t += hs;
      y = z;
      track(y, t);
      shot.hit = true;
      break;
    }
    y = *next;
    t += h;
    track(y, t);
  }
  shot.s_end = y.s;
  shot.length = t;
  if (final_state) *final_state = y;
  return shot;
}

State initial_state(const WarpedProfile& profile, double s0, double alpha, double& c) {
  const double phi0 = profile.phi(s0);
  c = phi0 * std::sin(alpha);
  return {s0, 0.0, std::cos(alpha), std::sin(alpha) / phi0};
}

GeodesicPath radial_path(double s_p, double s_q, double theta_p, PathKind kind, double length) {
  GeodesicPath g;
  g.kind = kind;
  g.length = length;
  g.min_s = std::min(s_p, s_q);
  g.max_s = std::max(s_p, s_q);
  g.alpha = s_q >= s_p ? 0.0 : kPi;
  g.t = {0.0, length};
  g.states = {{s_p, theta_p}, {s_q, theta_p}};
  return g;
}

// Nonuniform alpha grid clustered at 0 and pi.
std::vector<double> alpha_grid(int n) {
  std::vector<double> a;
  for (int k = 1; k < n; ++k) a.push_back(kPi * 0.5 * (1.0 - std::cos(kPi * k / n)));
  return a;
}

struct Candidate {
  double alpha;
  Shot shot;
};

// Accepted endpoint mismatch of a bisection that stops on the angle resolution.
constexpr double kBracketTolerance = 1e-8;

bool beyond(const Shot& sh, double s_q) { return sh.s_end > s_q; }

std::optional<Candidate> bisect(const WarpedProfile& profile, double s_p, double s_q, double dth,
                                double budget, const GeodesicOptions& opt, double a_lo,
                                double g_lo, double a_hi) {
  Candidate best{0.0, {}};
  for (int it = 0; it < opt.bisection_budget; ++it) {
    const double a = 0.5 * (a_lo + a_hi);
    double c;
    const State y0 = initial_state(profile, s_p, a, c);
    const Shot sh = integrate(profile, y0, c, budget, dth, opt,
                              nullptr, nullptr);
    double g;
    if (sh.hit) {
      g = sh.s_end - s_q;
      best = {a, sh};
      if (std::abs(g) < opt.tolerance) return best;
    } else if (beyond(sh, s_q)) {
      g = 1.0;
    } else {
      return std::nullopt;
    }
    if (a_hi - a_lo < 1e-15) break;
    if ((g < 0) == (g_lo < 0)) {
      a_lo = a;
      g_lo = g;
    } else {
      a_hi = a;
    }
  }
  if (best.shot.hit && std::abs(best.shot.s_end - s_q) < kBracketTolerance) return best;
  return std::nullopt;
}

std::vector<Candidate> scan_solutions(const WarpedProfile& profile, double s_p, double s_q,
                                      double dth, double budget, const GeodesicOptions& opt) {
  std::vector<Candidate> out;
  const auto grid = alpha_grid(opt.scan_points);
  // (alpha, g) of the previous shot; g = 1 marks a miss beyond s_q
  bool have_prev = false;
  double prev_a = 0.0, prev_g = 0.0;
  for (double a : grid) {
    double c;
    const State y0 = initial_state(profile, s_p, a, c);
    const Shot sh = integrate(profile, y0, c, budget, dth, opt,
                              nullptr, nullptr);
    if (!sh.hit) {
      // ran out of length or domain beyond s_q: the landing point lies further out, so the
      // miss can close a bracket with a short hit
      if (beyond(sh, s_q)) {
        if (have_prev && prev_g < 0)
          if (auto cand = bisect(profile, s_p, s_q, dth, budget, opt, prev_a, prev_g, a))
            out.push_back(*cand);
        have_prev = true;
        prev_a = a;
        prev_g = 1.0;
      } else {
        have_prev = false;
      }
      continue;
    }
    const double g = sh.s_end - s_q;
    if (std::abs(g) < opt.tolerance) {
      out.push_back({a, sh});
    } else if (have_prev && (prev_g < 0) != (g < 0)) {
      if (auto cand = bisect(profile, s_p, s_q, dth, budget, opt, prev_a, prev_g, a))
        out.push_back(*cand);
    }
    have_prev = true;
    prev_a = a;
    prev_g = g;
  }
  return out;
}

std::optional<Candidate> secant_solution(const WarpedProfile& profile, double s_p, double s_q,
                                         double dth, double budget, const GeodesicOptions& opt) {
  const double sm = 0.5 * (s_p + s_q);
  const auto [phi_m, dphi_m] = profile.phi_dphi(sm);
  double a0 = std::atan2(phi_m * dth, s_q - s_p) + 0.5 * dphi_m * dth;
  a0 = std::clamp(a0, 1e-6, kPi - 1e-6);
  double a1 = std::clamp(a0 + 1e-3, 1e-6, kPi - 1e-6);
  auto eval = [&](double a, Shot& sh) {
    double c;
    const State y0 = initial_state(profile, s_p, a, c);
    sh = integrate(profile, y0, c, budget, dth, opt, nullptr,
                   nullptr);
    return sh.hit;
  };
  Shot sh0, sh1;
  if (!eval(a0, sh0) || !eval(a1, sh1)) return std::nullopt;
  double g0 = sh0.s_end - s_q;
  double g1 = sh1.s_end - s_q;
  for (int it = 0; it < 40; ++it) {
    if (std::abs(g1) < opt.tolerance) return Candidate{a1, sh1};
    if (g1 == g0) return std::nullopt;
    const double a2 = a1 - g1 * (a1 - a0) / (g1 - g0);
    if (!(a2 > 0.0 && a2 < kPi)) return std::nullopt;
    a0 = a1;
    g0 = g1;
    a1 = a2;
    if (!eval(a1, sh1)) return std::nullopt;
    g1 = sh1.s_end - s_q;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Radial: return "radial";
    case PathKind::Clairaut: return "clairaut";
    case PathKind::ThroughCap: return "through-cap";
    case PathKind::Obstacle: return "obstacle";
  }
  return "unknown";
}

Shot shoot(const WarpedProfile& profile, double s0, double alpha, double target, double budget,
           const GeodesicOptions& options, GeodesicPath* record) {
  double c;
  const State y0 = initial_state(profile, s0, alpha, c);
  if (record) {
    record->kind = PathKind::Clairaut;
    record->clairaut_constant = c;
    record->alpha = alpha;
  }
  Shot sh = integrate(profile, y0, c, budget, target, options, record, nullptr);
  if (record) {
    record->length = sh.length;
    record->min_s = sh.min_s;
    record->max_s = sh.max_s;
    record->energy_error = sh.energy_error;
    record->clairaut_error = sh.clairaut_error;
  }
  return sh;
}

SlicePoint exp_slice(const WarpedProfile& profile, double s0, double alpha, double t,
                     const GeodesicOptions& options) {
  if (t < 0.0) throw ContractError("exp_slice: negative length");
  if (t == 0.0) return {s0, 0.0};
  const double lo = profile.lo();
  const double hi = profile.hi();
  auto radial = [&](double dir) -> SlicePoint {
    double s = s0 + dir * t;
    double th = 0.0;
    if (s < lo && is_zero_end(profile, lo)) {
      s = 2 * lo - s;
      th = kPi;
    } else if (s > hi && is_zero_end(profile, hi)) {
      s = 2 * hi - s;
      th = kPi;
    }
    if (!profile.contains(s)) throw RangeError("exp_slice: radial ray leaves the domain");
    return {std::clamp(s, lo, hi), th};
  };
  if (is_zero_end(profile, s0)) return radial(std::abs(s0 - lo) <= std::abs(s0 - hi) ? 1.0 : -1.0);
  if (std::sin(alpha) < 1e-15) return radial(std::cos(alpha) >= 0 ? 1.0 : -1.0);
  double c;
  State end;
  const State y0 = initial_state(profile, s0, alpha, c);
  const Shot sh = integrate(profile, y0, c, t,
                            std::numeric_limits<double>::quiet_NaN(), options, nullptr, &end);
  if (sh.left_domain) throw RangeError("exp_slice: geodesic leaves the domain");
  return {end.s, end.th};
}

bool obstacle_path(const WarpedProfile& profile, double s_c, double s_p, double s_q, double dtheta,
                   GeodesicPath& out) {
  const double c = profile.phi(s_c);
  for (double e : {s_p, s_q}) {
    if (std::abs(e - s_c) < 1e-14) return false;
    for (int i = 1; i <= 256; ++i) {
      const double s = s_c + (e - s_c) * i / 256.0;
      if (!(profile.phi(s) > c)) return false;
    }
  }
  // s = s_c + dir*u^2 removes the inverse square-root singularity at the turning point
  struct Piece {
    double theta, length;
  };
  auto piece = [&](double e) {
    const double dir = e > s_c ? 1.0 : -1.0;
    const double umax = std::sqrt(std::abs(e - s_c));
    auto root = [&](double u, double& phi) {
      const double s = s_c + dir * u * u;
      phi = profile.phi(s);
      return std::sqrt(std::max((phi - c) * (phi + c), 1e-300));
    };
    const double th = quad::gauss_legendre(
        [&](double u) {
          double phi;
          const double r = root(u, phi);
          return 2.0 * u * c / (phi * r);
        },
        0.0, umax, 64);
    const double len = quad::gauss_legendre(
        [&](double u) {
          double phi;
          const double r = root(u, phi);
          return 2.0 * u * phi / r;
        },
        0.0, umax, 64);
    return Piece{th, len};
  };
  const Piece a = piece(s_p);
  const Piece b = piece(s_q);
  const double arc = dtheta - a.theta - b.theta;
  if (arc < 0.0) return false;

  out = GeodesicPath{};
  out.kind = PathKind::Obstacle;
  out.clairaut_constant = c;
  out.alpha = s_p > s_c ? kPi - std::asin(std::min(1.0, c / profile.phi(s_p)))
                        : std::asin(std::min(1.0, c / profile.phi(s_p)));
  out.length = a.length + b.length + c * arc;
  out.min_s = std::min({s_c, s_p, s_q});
  out.max_s = std::max({s_c, s_p, s_q});
  // samples: tangent arc from p, circle, tangent arc to q
  const int n = 32;
  auto partial = [&](double e, double frac) {
    const double dir = e > s_c ? 1.0 : -1.0;
    const double u = std::sqrt(std::abs(e - s_c)) * frac;
    Piece pc{0, 0};
    if (u > 0) {
      const double s = s_c + dir * u * u;
      pc = piece(s);
    }
    return std::make_pair(s_c + dir * u * u, pc);
  };
  for (int i = n; i >= 0; --i) {
    const auto [s, pc] = partial(s_p, i / static_cast<double>(n));
    out.t.push_back(a.length - pc.length);
    out.states.push_back({s, a.theta - pc.theta});
  }
  for (int i = 1; i < n; ++i) {
    const double th = a.theta + arc * i / n;
    out.t.push_back(a.length + c * arc * i / n);
    out.states.push_back({s_c, th});
  }
  for (int i = 0; i <= n; ++i) {
    const auto [s, pc] = partial(s_q, i / static_cast<double>(n));
    out.t.push_back(a.length + c * arc + pc.length);
    out.states.push_back({s, dtheta - b.theta + pc.theta});
  }
  return true;
}

GeodesicPath geodesic_between(const WarpedProfile& profile, SlicePoint p, SlicePoint q,
                              const GeodesicOptions& opt) {
  if (!profile.contains(p.s) || !profile.contains(q.s))
    throw DomainError("geodesic_between: endpoint outside the profile domain");
  const double dth = reduce_angle(q.theta - p.theta);
  const double dir = std::sin(q.theta - p.theta) >= 0 ? 1.0 : -1.0;
  const double s_p = p.s;
  const double s_q = q.s;

  if (is_zero_end(profile, s_p) || is_zero_end(profile, s_q)) {
    if (opt.exclude_caps) throw ContractError("geodesic_between: endpoint on an excluded cap");
    return radial_path(s_p, s_q, p.theta, PathKind::Radial, std::abs(s_q - s_p));
  }

  const double lo_c = is_zero_end(profile, profile.lo()) ? profile.lo() + opt.cap_margin
                                                         : -std::numeric_limits<double>::infinity();
  const double hi_c = is_zero_end(profile, profile.hi()) ? profile.hi() - opt.cap_margin
                                                         : std::numeric_limits<double>::infinity();

  std::vector<GeodesicPath> cands;
  const double budget =
      1.5 * (std::abs(s_q - s_p) + std::min(profile.phi(s_p), profile.phi(s_q)) * dth);
  if (dth < 1e-14) cands.push_back(radial_path(s_p, s_q, p.theta, PathKind::Radial, std::abs(s_q - s_p)));
  if (!opt.exclude_caps && std::abs(dth - kPi) < 1e-12) {
    if (is_zero_end(profile, profile.lo()))
      cands.push_back(radial_path(s_p, s_q, p.theta, PathKind::ThroughCap,
                                  s_p + s_q - 2 * profile.lo()));
    if (is_zero_end(profile, profile.hi()))
      cands.push_back(radial_path(s_p, s_q, p.theta, PathKind::ThroughCap,
                                  2 * profile.hi() - s_p - s_q));
  }

  if (dth >= 1e-14) {
    std::vector<Candidate> sols;
    if (!opt.exhaustive) {
      if (auto c = secant_solution(profile, s_p, s_q, dth, budget, opt)) sols.push_back(*c);
    }
    if (sols.empty()) sols = scan_solutions(profile, s_p, s_q, dth, budget, opt);
    for (const auto& sol : sols) {
      if (opt.exclude_caps && (sol.shot.min_s < lo_c || sol.shot.max_s > hi_c)) continue;
      GeodesicPath g;
      g.kind = PathKind::Clairaut;
      g.alpha = sol.alpha;
      g.length = sol.shot.length;
      cands.push_back(g);
    }
    if (opt.exclude_caps) {
      GeodesicPath ob;
      if (std::isfinite(lo_c) && obstacle_path(profile, lo_c, s_p, s_q, dth, ob)) cands.push_back(ob);
      if (std::isfinite(hi_c) && obstacle_path(profile, hi_c, s_p, s_q, dth, ob)) cands.push_back(ob);
    }
  }

  if (cands.empty())
    throw ConvergenceError("geodesic_between: no connecting path found", 0.0, kPi,
                           std::numeric_limits<double>::quiet_NaN());
  auto best = *std::min_element(cands.begin(), cands.end(),
                                [](const auto& a, const auto& b) { return a.length < b.length; });
  if (best.kind == PathKind::Clairaut) {
    const double alpha = best.alpha;
    best = GeodesicPath{};
    shoot(profile, s_p, alpha, dth, budget, opt, &best);
  }
  // orient and translate to the caller's frame
  for (auto& st : best.states) st.theta = p.theta + dir * st.theta;
  return best;
}

double slice_distance(const WarpedProfile& profile, double s1, double s2, double angle,
                      const GeodesicOptions& options) {
  return geodesic_between(profile, {s1, 0.0}, {s2, angle}, options).length;
}

}  // namespace shrinker
