#include "shrinker/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "shrinker/conformal.hpp"
#include "shrinker/errors.hpp"
#include "shrinker/gh.hpp"
#include "shrinker/volume.hpp"

namespace shrinker {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool zero_end(const WarpedProfile& p, double s) {
  return p.at_end(s, EndKind::SmoothCap) || p.at_end(s, EndKind::Tip);
}

bool is_round(const WarpedProfile& p) { return p.expression().text.rfind("round:", 0) == 0; }

// Round profiles are homogeneous: every quantity at s equals the one at the lower pole.
double effective_center(const WarpedProfile& p, double s) {
  if (is_round(p) && p.contains(s)) return p.lo();
  return s;
}

bool pole_at_lo(const WarpedProfile& p, double s) {
  return std::abs(s - p.lo()) <= std::abs(s - p.hi());
}

// ---- truncated multivariate polynomials of total degree <= 5 ----

constexpr int kDeg = 5;

struct Basis {
  int n = 0;
  std::vector<std::vector<int>> exps;
  std::vector<int> degree;
  std::vector<double> beta_factorial;
  std::vector<int> prod;  // N*N, -1 when the degree overflows
  std::vector<int> unit;  // index of y_i
  int size() const { return static_cast<int>(exps.size()); }
};

void enumerate(int n, int var, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (var == n) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= left; ++e) {
    cur[var] = e;
    enumerate(n, var + 1, left - e, cur, out);
  }
  cur[var] = 0;
}

std::shared_ptr<const Basis> basis_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Basis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto b = std::make_shared<Basis>();
  b->n = n;
  std::vector<int> cur(n, 0);
  enumerate(n, 0, kDeg, cur, b->exps);
  std::stable_sort(b->exps.begin(), b->exps.end(), [](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (int v : x) dx += v;
    for (int v : y) dy += v;
    return dx < dy;
  });
  const int N = b->size();
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < N; ++i) {
    index[b->exps[i]] = i;
    int d = 0;
    double f = 1.0;
    for (int v : b->exps[i]) {
      d += v;
      for (int k = 2; k <= v; ++k) f *= k;
    }
    b->degree.push_back(d);
    b->beta_factorial.push_back(f);
  }
  b->prod.assign(static_cast<std::size_t>(N) * N, -1);
  std::vector<int> e(n);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (b->degree[i] + b->degree[j] > kDeg) continue;
      for (int v = 0; v < n; ++v) e[v] = b->exps[i][v] + b->exps[j][v];
      b->prod[static_cast<std::size_t>(i) * N + j] = index.at(e);
    }
  b->unit.resize(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> u(n, 0);
    u[v] = 1;
    b->unit[v] = index.at(u);
  }
  cache[n] = b;
  return b;
}

using Poly = std::vector<double>;

Poly mul(const Basis& b, const Poly& p, const Poly& q) {
  const int N = b.size();
  Poly r(N, 0.0);
  for (int i = 0; i < N; ++i) {
    if (p[i] == 0.0) continue;
    for (int j = 0; j < N; ++j) {
      if (q[j] == 0.0) continue;
      const int k = b.prod[static_cast<std::size_t>(i) * N + j];
      if (k >= 0) r[k] += p[i] * q[j];
    }
  }
  return r;
}

// outer(inner) for an inner polynomial without constant term
Poly compose(const Basis& b, const Jet& outer, const Poly& inner) {
  Poly result(b.size(), 0.0);
  result[0] = outer[0];
  Poly power(b.size(), 0.0);
  power[0] = 1.0;
  for (int k = 1; k <= kDeg; ++k) {
    power = mul(b, power, inner);
    for (int i = 0; i < b.size(); ++i) result[i] += outer[static_cast<std::size_t>(k)] * power[i];
  }
  return result;
}

struct ConvexTerms {
  double deviation = 0.0;
  std::array<double, 5> deriv{};
};

// h_ij = (1 + F) delta_ij - G x_i x_j with F = (phi(rho)/rho)^2 - 1, G = F / rho^2, rho = |x|,
// the pullback of dr^2 + phi(r)^2 g_S to normal coordinates at the pole `pole` (direction dir).
ConvexTerms pole_form_terms(const WarpedProfile& prof, double pole, double dir, int n, double R) {
  const auto bp = basis_for(n);
  const Basis& b = *bp;
  const int N = b.size();
  ConvexTerms out;

  std::vector<std::vector<double>> dirs;
  for (int k : {1, 2, 3, n}) {
    if (k > n) continue;
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < k; ++i) d[i] = 1.0 / std::sqrt(static_cast<double>(k));
    dirs.push_back(d);
  }

  auto accumulate = [&](const std::vector<double>& x0, const Jet& F, const Jet& G) {
    double t0 = 0.0;
    for (double v : x0) t0 += v * v;
    Poly dt(N, 0.0);
    for (int i = 0; i < n; ++i) {
      dt[b.unit[i]] += 2.0 * x0[i];
      std::vector<int> sq(n, 0);
      sq[i] = 2;
      for (int k = 0; k < N; ++k)
        if (b.exps[k] == sq) dt[k] += 1.0;
    }
    const Poly Fp = compose(b, F, dt);
    const Poly Gp = compose(b, G, dt);
    std::vector<Poly> X(n, Poly(N, 0.0));
    for (int i = 0; i < n; ++i) {
      X[i][0] = x0[i];
      X[i][b.unit[i]] = 1.0;
    }
    for (int i = 0; i < n; ++i) {
      const Poly GXi = mul(b, Gp, X[i]);
      for (int j = i; j < n; ++j) {
        Poly h = mul(b, GXi, X[j]);
        for (auto& v : h) v = -v;
        if (i == j)
          for (int k = 0; k < N; ++k) h[k] += Fp[k];
        // h now holds h_ij - delta_ij
        out.deviation = std::max(out.deviation, std::abs(h[0]));
        for (int k = 1; k < N; ++k) {
          const int d = b.degree[k];
          const double v = std::abs(h[k]) * b.beta_factorial[k];
          out.deriv[d - 1] = std::max(out.deriv[d - 1], v);
        }
      }
    }
  };

  // origin: phi(rho)/rho = c1 + c3 t + c5 t^2 in t = rho^2; truncation only affects degree >= 6
  {
    const Jet J = prof.jet(pole);
    Jet q;
    q[0] = J[1] * dir;
    q[1] = J[3] * dir * dir * dir;
    q[2] = J[5] * std::pow(dir, 5);
    Jet F = q * q - 1.0;
    for (std::size_t k = 3; k < Jet::kSize; ++k) F[k] = 0.0;
    Jet G;
    G[0] = F[1];
    G[1] = F[2];
    accumulate(std::vector<double>(n, 0.0), F, G);
  }
  for (int k = 1; k <= 8; ++k) {
    const double rho0 = R * k / 8.0;
    const double t0 = rho0 * rho0;
    const Jet rho = sqrt(Jet::variable(t0));
    const double s0 = pole + dir * rho0;
    const Jet phi = prof.jet(s0).compose(Jet::constant(pole) + rho * dir);
    const Jet ratio = phi / rho;
    const Jet F = ratio * ratio - 1.0;
    const Jet G = F / Jet::variable(t0);
    for (const auto& d : dirs) {
      std::vector<double> x0(n);
      for (int i = 0; i < n; ++i) x0[i] = d[i] * rho0;
      accumulate(x0, F, G);
    }
  }
  return out;
}

GhEvaluation gh_eval_impl(const WarpedProfile& profile, double s, double r, double net_fraction) {
  GeodesicOptions opt;
  opt.exhaustive = false;
  // steps of 1/64 of each shot's length budget (and 0.05 phi/|phi'| near zeros of phi)
  opt.step_fraction = 1.0;
  const SampledNet net = sample_net(profile, s, r, net_fraction * r, "ball", &opt);
  const int n = static_cast<int>(net.vectors.size());
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double q = 0.0;
      for (int k = 0; k < 3; ++k) q += std::pow(net.vectors[i][k] - net.vectors[j][k], 2);
      d[static_cast<std::size_t>(i) * n + j] = std::sqrt(q);
    }
  const FiniteMetricSpace E(n, std::move(d), 0, "euclidean");
  GhEvaluation e;
  e.r = r;
  e.net_size = n;
  e.distortion = distortion(net.space, E, Correspondence::identity(n));
  e.slack = 2.0 * net.covering_radius * distortion_lipschitz(net.space, E);
  e.normalized_distortion = e.distortion / (2.0 * r);
  e.normalized = (e.distortion + e.slack) / (2.0 * r);
  return e;
}

// Nets farther out see geodesic candidates leaving a truncated domain.
double gh_cap(const WarpedProfile& p, double s) {
  if (zero_end(p, s)) return 0.5 * p.length();
  return 0.5 * std::min(s - p.lo(), p.hi() - s);
}

}  // namespace

double radius_cap(double D) {
  if (!(D > 0.0)) throw DomainError("radius_cap: D must be positive");
  return 1.0 / (100.0 * D);
}

double volume_cap(const WarpedProfile& profile, double s) {
  s = effective_center(profile, s);
  if (!profile.contains(s)) throw DomainError("volume_cap: point outside domain");
  if (profile.at_end(s, EndKind::SmoothCap)) return profile.length();
  if (zero_end(profile, s)) throw CapabilityError("volume_cap: tip centers are not supported");
  return std::min(s - profile.lo(), profile.hi() - s);
}

double volume_ratio(const WarpedProfile& profile, double s, double r) {
  s = effective_center(profile, s);
  if (!profile.contains(s)) throw DomainError("volume_ratio: point outside domain");
  if (!(r > 0.0)) throw DomainError("volume_ratio: radius must be positive");
  const int m = profile.dimension();
  const double euclid = unit_ball_volume(m) * std::pow(r, m);
  if (profile.at_end(s, EndKind::Tip)) throw CapabilityError("volume_ratio: tip centers are not supported");
  if (ball_center_supported(profile, s)) return ball_volume(profile, nullptr, s, r, false) / euclid;
  if (profile.sampled())
    throw CapabilityError("volume_ratio: sampled profiles support pole centers only");
  return ball_volume_shooting(profile, s, r) / euclid;
}

RadiusValue volume_radius(const WarpedProfile& profile, double s, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("volume_radius: delta must lie in (0, 1)");
  const double cap = volume_cap(profile, s);
  const double target = 1.0 - delta;
  // the shooting method needs the ball strictly inside the domain
  const double top = profile.at_end(effective_center(profile, s), EndKind::SmoothCap) ||
                             profile.homogeneity() != Homogeneity::None
                         ? cap
                         : cap * (1.0 - 1e-9);
  if (volume_ratio(profile, s, top) > target) return {top, true};
  double lo = 0.0, hi = top;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (volume_ratio(profile, s, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, false};
}

GhEvaluation gh_evaluate(const WarpedProfile& profile, double s, double r, double net_fraction) {
  if (!(r > 0.0)) throw DomainError("gh_evaluate: radius must be positive");
  if (!(net_fraction > 0.0 && net_fraction <= 1.0))
    throw DomainError("gh_evaluate: net_fraction must lie in (0, 1]");
  s = effective_center(profile, s);
  if (profile.at_end(s, EndKind::Tip)) throw CapabilityError("gh_evaluate: tip centers are not supported");
  return gh_eval_impl(profile, s, r, net_fraction);
}

GhRadius gh_radius(const WarpedProfile& profile, double s, double eps, double net_fraction) {
  if (!(eps > 0.0)) throw DomainError("gh_radius: eps must be positive");
  s = effective_center(profile, s);
  const double cap = gh_cap(profile, s);
  GhRadius out;
  // a net whose distances fail validation cannot certify the bound and counts as a failure
  auto eval = [&](double r) {
    try {
      return gh_evaluate(profile, s, r, net_fraction);
    } catch (const ContractError&) {
    } catch (const ResolutionError&) {
    }
    ++out.uncertified;
    GhEvaluation e;
    e.r = r;
    e.normalized = std::numeric_limits<double>::infinity();
    return e;
  };
  GhEvaluation top = eval(cap);
  if (top.normalized < eps) {
    out.radius = {cap, true};
    out.at_radius = top;
    return out;
  }
  double hi = cap;
  double lo = cap / 2.0;
  GhEvaluation at_lo = eval(lo);
  for (int k = 0; !(at_lo.normalized < eps); ++k) {
    if (k > 40) throw ConvergenceError("gh_radius: no radius satisfies the bound", 0.0, lo, lo);
    hi = lo;
    lo /= 2.0;
    at_lo = eval(lo);
  }
  while (hi / lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lo * hi);
    const GhEvaluation e = eval(mid);
    if (e.normalized < eps) {
      lo = mid;
      at_lo = e;
    } else {
      hi = mid;
    }
  }
  if (at_lo.slack / (2.0 * lo) > 0.5 * eps)
    throw ResolutionError("gh_radius: net slack exceeds eps/2; refine the net");
  out.radius = {lo, false};
  out.at_radius = at_lo;
  return out;
}

bool convex_supported(const WarpedProfile& profile, double s) {
  if (!profile.contains(s)) return false;
  if (profile.homogeneity() != Homogeneity::None || is_round(profile)) return true;
  return profile.at_end(s, EndKind::SmoothCap) && !profile.sampled();
}

double convex_cap(const WarpedProfile& profile, double s) {
  if (!convex_supported(profile, s))
    throw CapabilityError("convex_cap: normal coordinates unavailable at this point");
  if (profile.homogeneity() == Homogeneity::Flat) {
    if (profile.at_end(s, EndKind::SmoothCap)) return profile.length();
    return std::min(s - profile.lo(), profile.hi() - s);
  }
  if (profile.homogeneity() == Homogeneity::Cylinder)
    return std::min({kPi * profile.phi(s), s - profile.lo(), profile.hi() - s});
  return profile.length();  // poles and round profiles
}

ConvexCheck convex_radius_check(const WarpedProfile& profile, double s, double r) {
  if (!(r > 0.0)) throw DomainError("convex_radius_check: radius must be positive");
  const double cap = convex_cap(profile, s);
  if (10.0 * r >= cap) throw RangeError("convex_radius_check: 10 r exceeds the injectivity radius");
  const int m = profile.dimension();
  ConvexCheck c;
  c.r = r;
  c.threshold = std::pow(10.0, -m);
  const double R = 10.0 * r;
  ConvexTerms t;
  if (profile.homogeneity() == Homogeneity::Flat) {
    // h is the identity
  } else if (profile.homogeneity() == Homogeneity::Cylinder) {
    // R x S^{m-1}(rho): h is the identity in the line factor
    const WarpedProfile sph = round_profile(m - 1, profile.phi(s));
    t = pole_form_terms(sph, sph.lo(), 1.0, m - 1, R);
  } else {
    const double pole = is_round(profile) ? profile.lo() : s;
    const bool lo = pole_at_lo(profile, pole);
    t = pole_form_terms(profile, lo ? profile.lo() : profile.hi(), lo ? 1.0 : -1.0, m, R);
  }
  c.deviation = t.deviation;
  double rk = 1.0;
  c.expression = t.deviation;
  for (int k = 0; k < 5; ++k) {
    rk *= r;
    c.derivative_terms[k] = rk * t.deriv[k];
    c.expression += c.derivative_terms[k];
  }
  c.pass = c.expression < c.threshold;
  c.marginal = c.expression > 0.1 * c.threshold && c.expression < 10.0 * c.threshold;
  return c;
}

RadiusValue convex_radius(const WarpedProfile& profile, double s) {
  const double top = convex_cap(profile, s) / 10.0 * (1.0 - 1e-9);
  if (convex_radius_check(profile, s, top).pass) return {top, true};
  double hi = top, lo = top / 2.0;
  while (!convex_radius_check(profile, s, lo).pass) {
    hi = lo;
    lo /= 2.0;
    if (lo < 1e-300) throw ConvergenceError("convex_radius: no admissible radius", 0.0, lo, lo);
  }
  while (hi / lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lo * hi);
    if (convex_radius_check(profile, s, mid).pass)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, false};
}

double bold_volume_radius(const WarpedProfile& profile, double s, double D, double delta) {
  const double cap = radius_cap(D);
  const double vcap = volume_cap(profile, s);
  if (cap < vcap && volume_ratio(profile, s, cap) > 1.0 - delta) return cap;
  return std::min(cap, volume_radius(profile, s, delta).value);
}

BoldRadii bold_radii(const WarpedProfile& profile, double s, double D, double delta, double eps) {
  BoldRadii b;
  b.cap = radius_cap(D);
  b.vr = bold_volume_radius(profile, s, D, delta);
  const GhEvaluation e = gh_evaluate(profile, s, std::min(b.cap, gh_cap(profile, s)));
  b.gr = e.normalized < eps ? b.cap : std::min(b.cap, gh_radius(profile, s, eps).radius.value);
  b.sr_available = convex_supported(profile, s);
  if (b.sr_available) {
    const double top = convex_cap(profile, s) / 10.0 * (1.0 - 1e-9);
    if (b.cap <= top && convex_radius_check(profile, s, b.cap).pass)
      b.sr = b.cap;
    else
      b.sr = std::min(b.cap, convex_radius(profile, s).value);
  } else {
    b.sr = std::numeric_limits<double>::quiet_NaN();
  }
  return b;
}

double axis_D(const ShrinkerModel& model, double s) {
  return std::abs(s - model.base_point()) + 10.0 * model.dimension();
}

RadiiReport radii_report(const ShrinkerModel& model, double s, double delta, double eps) {
  const WarpedProfile& g = model.profile;
  RadiiReport rep;
  rep.model = model.name;
  rep.s = s;
  rep.D = axis_D(model, s);
  rep.delta = delta;
  rep.eps = eps;
  rep.vr = volume_radius(g, s, delta);
  rep.gr = gh_radius(g, s, eps).radius;
  rep.sr_available = convex_supported(g, s);
  if (rep.sr_available) rep.sr = convex_radius(g, s);
  rep.bold = bold_radii(g, s, rep.D, delta, eps);
  const double rm = curvature_at(g, s).norm_rm;
  rep.rm_scale = rm > 0.0 ? 1.0 / std::sqrt(rm) : std::numeric_limits<double>::infinity();
  return rep;
}

namespace {

nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json radius_json(const RadiusValue& r) { return {{"value", r.value}, {"sentinel", r.sentinel}}; }

nlohmann::json bold_json(const BoldRadii& b) {
  return {{"cap", b.cap}, {"vr", b.vr}, {"gr", b.gr}, {"sr", num(b.sr)}, {"sr_available", b.sr_available}};
}

}  // namespace

nlohmann::json to_json(const RadiiReport& r) {
  nlohmann::json j;
  j["model"] = r.model;
  j["s"] = r.s;
  j["D"] = r.D;
  j["delta"] = r.delta;
  j["eps"] = r.eps;
  j["vr"] = radius_json(r.vr);
  j["gr"] = radius_json(r.gr);
  j["sr"] = r.sr_available ? radius_json(r.sr) : nlohmann::json(nullptr);
  j["bold"] = bold_json(r.bold);
  j["rm_scale"] = num(r.rm_scale);
  return j;
}

HarnackReport harnack_check(const WarpedProfile& profile, double s,
                            const std::function<double(double)>& D_of, double c, double delta) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("harnack_check: c must lie in (0, 1)");
  HarnackReport rep;
  rep.s = s;
  rep.c = c;
  rep.r = bold_volume_radius(profile, s, D_of(s), delta);
  rep.pass = true;
  for (double frac : {-0.99, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 0.99}) {
    const double y = s + frac * c * rep.r;
    if (!profile.contains(y) || (zero_end(profile, y) && !profile.is_pole(y))) continue;
    if (y <= profile.lo() || y >= profile.hi()) continue;
    const double ratio = bold_volume_radius(profile, y, D_of(y), delta) / rep.r;
    rep.neighbor_s.push_back(y);
    rep.ratios.push_back(ratio);
    rep.c_emp = std::min(rep.c_emp, std::min(ratio, 1.0 / ratio));
    if (!(ratio > c && ratio < 1.0 / c)) rep.pass = false;
  }
  return rep;
}

namespace {

double worst_pair(const BoldRadii& b) {
  std::vector<double> v{b.vr, b.gr};
  if (b.sr_available) v.push_back(b.sr);
  double w = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      w = std::min(w, std::min(v[i] / v[j], v[j] / v[i]));
  return w;
}

}  // namespace

EquivalenceReport equivalence_report(const ShrinkerModel& model, const std::vector<double>& points,
                                     double delta, double eps) {
  EquivalenceReport rep;
  rep.model = model.name;
  rep.finite = true;
  for (double s : points) {
    EquivalenceRow row;
    row.s = s;
    const double D = axis_D(model, s);
    row.g = bold_radii(model.profile, s, D, delta, eps);
    const ConformalChart chart = build_chart(model, s);
    row.gbar = bold_radii(chart.profile(), chart.sbar(s), D, delta, eps);
    row.worst = std::min(worst_pair(row.g), worst_pair(row.gbar));
    if (!(std::isfinite(row.worst) && row.worst > 0.0)) rep.finite = false;
    rep.c_emp = std::min(rep.c_emp, row.worst);
    rep.rows.push_back(row);
  }
  return rep;
}

nlohmann::json to_json(const EquivalenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"s", row.s}, {"g", bold_json(row.g)}, {"gbar", bold_json(row.gbar)}, {"worst", row.worst}});
  return {{"model", r.model}, {"rows", rows}, {"c_emp", r.c_emp}, {"finite", r.finite}};
}

namespace {

// r^{-2 theta + 4 - m} int_{B(p, r)} bold_vr^{2 theta - 4}, with the integrand a function of the
// distance t to the center: the axis point at distance t for a pole, the center itself for
// homogeneous profiles; D = t + 10 m.
double density_value(const ShrinkerModel& model, double r, double theta, double delta) {
  const WarpedProfile& g = model.profile;
  const double p = model.base_point();
  const int m = g.dimension();
  const bool pole = g.is_pole(p);
  const bool lo = pole_at_lo(g, p);
  auto integrand = [&](double t) {
    double s = p;
    if (pole) s = lo ? g.lo() + t : g.hi() - t;
    return std::pow(bold_volume_radius(g, s, t + 10.0 * m, delta), 2.0 * theta - 4.0);
  };
  constexpr int kSteps = 64;
  double sum = 0.0;
  double prev = 0.0;
  for (int k = 1; k <= kSteps; ++k) {
    const double t = r * k / kSteps;
    const double v = ball_volume(g, nullptr, p, t, false);
    sum += integrand(r * (k - 0.5) / kSteps) * (v - prev);
    prev = v;
  }
  return std::pow(r, -2.0 * theta + 4.0 - m) * sum;
}

}  // namespace

DensityReport density_integral(const ShrinkerModel& model, double r, double theta, double delta) {
  if (!(theta > 0.0 && theta < 1.0)) throw RangeError("density_integral: theta must lie in (0, 1)");
  if (!(r > 0.0)) throw DomainError("density_integral: radius must be positive");
  if (!ball_center_supported(model.profile, model.base_point()))
    throw CapabilityError("density_integral: unsupported ball center");
  DensityReport rep;
  rep.theta = theta;
  rep.r = r;
  rep.value = density_value(model, r, theta, delta);
  rep.value_half = density_value(model, r / 2.0, theta, delta);
  rep.exponent = std::log2(rep.value / rep.value_half);
  rep.expected_exponent = 4.0 - 2.0 * theta;
  rep.finite = std::isfinite(rep.value) && std::isfinite(rep.value_half);
  rep.exponent_ok = std::abs(rep.exponent - rep.expected_exponent) < 0.1;
  return rep;
}

}  // namespace shrinker
