#include "shrinker/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shrinker/errors.hpp"
#include "shrinker/gh.hpp"
#include "shrinker/quadrature.hpp"

namespace shrinker {

namespace {

// s(s̄) as a jet about s̄0 with s(s̄0) = s0, from ds/ds̄ = e^{-u(s)} by Picard iteration.
Jet inverse_jet(const Jet& U, double s0) {
  Jet S = Jet::constant(s0);
  S[1] = std::exp(-U.value());
  for (int it = 0; it < Jet::kOrder + 1; ++it) {
    const Jet g = exp(-U.compose(S));
    Jet next = Jet::constant(s0);
    for (std::size_t k = 0; k + 1 < Jet::kSize; ++k) next[k + 1] = g[k] / static_cast<double>(k + 1);
    S = next;
  }
  return S;
}

}  // namespace

ConformalChart::ConformalChart(const ShrinkerModel& base, double s_q, double D, int nodes)
    : base_(std::make_shared<ShrinkerModel>(base)), s_q_(s_q), D_(D) {
  const WarpedProfile& p = base_->profile;
  const int m = p.dimension();
  if (m <= 2) throw DimensionError("conformal chart needs m >= 3");
  if (!p.contains(s_q)) throw DomainError("conformal chart: base point outside the domain");
  if (nodes < 16) throw ContractError("conformal chart: too few table nodes");
  f_q_ = base_->potential.value(s_q);
  if (p.length() <= 2.0 * kWindow) {
    a_ = p.lo();
    b_ = p.hi();
  } else {
    a_ = std::max(p.lo(), s_q - kWindow);
    b_ = std::min(p.hi(), s_q + kWindow);
  }
  h_ = (b_ - a_) / (nodes - 1);

  auto sb = std::make_shared<std::vector<double>>(nodes, 0.0);
  auto eu = std::make_shared<std::vector<double>>(nodes, 0.0);
  auto du = std::make_shared<std::vector<double>>(nodes, 0.0);
  const auto integrand = [this](double s) { return std::exp(u(s)); };
  for (int i = 0; i < nodes; ++i) {
    const double x = a_ + i * h_;
    (*eu)[i] = std::exp(u(x));
    (*du)[i] = -base_->potential.jet(x).derivative(1) / (m - 2);
    if (i > 0) (*sb)[i] = (*sb)[i - 1] + quad::gauss_legendre(integrand, x - h_, x, 1);
  }
  const int iq = std::clamp(static_cast<int>((s_q - a_) / h_), 0, nodes - 1);
  const double shift = (*sb)[iq] + quad::gauss_legendre(integrand, a_ + iq * h_, s_q, 1);
  for (double& v : *sb) v -= shift;
  sbar_nodes_ = sb;
  exp_u_nodes_ = eu;
  du_nodes_ = du;

  const int m_dim = m;
  const double sb_lo = sb->front();
  const double sb_hi = sb->back();
  const EndKind lo_kind = a_ == p.lo() ? p.lo_kind() : EndKind::Open;
  const EndKind hi_kind = b_ == p.hi() ? p.hi_kind() : EndKind::Open;
  // The chart holds a copy of this object's tables and base model, so it stays valid on its own.
  const ConformalChart self = *this;
  auto phibar = [self, m_dim](double sbar) -> Jet {
    const double s0 = self.s_of(sbar);
    const Jet F = self.base().potential.jet(s0);
    const Jet U = (Jet::constant(self.f_q()) - F) / static_cast<double>(m_dim - 2);
    const Jet S = inverse_jet(U, s0);
    const Jet phi = self.base().profile.jet(s0);
    return exp(U.compose(S)) * phi.compose(S);
  };
  profile_ = std::make_shared<WarpedProfile>("conformal:" + p.name(), m, sb_lo, sb_hi, lo_kind, hi_kind,
                                             phibar, Jet::kOrder);
  profile_->set_slope_evaluator([self](double sbar) -> std::array<double, 2> {
    const double s = self.s_of_fast(sbar);
    const Jet F = self.base().potential.jet(s);
    const int mm = self.dimension();
    const double uu = (self.f_q() - F.value()) / (mm - 2);
    const double du = -F.derivative(1) / (mm - 2);
    const auto [ph, dph] = self.base().profile.phi_dphi(s);
    return {std::exp(uu) * ph, du * ph + dph};
  });
}

double ConformalChart::fbar(double s) const { return base_->potential.value(s) - f_q_; }

double ConformalChart::u(double s) const { return -fbar(s) / (dimension() - 2); }

double ConformalChart::sbar(double s) const {
  if (s < a_ - 1e-12 || s > b_ + 1e-12) throw DomainError("sbar: point outside the chart window");
  s = std::clamp(s, a_, b_);
  const auto& nodes = *sbar_nodes_;
  const int n = static_cast<int>(nodes.size());
  const int i = std::clamp(static_cast<int>((s - a_) / h_), 0, n - 2);
  return nodes[i] + quad::gauss_legendre([this](double x) { return std::exp(u(x)); }, a_ + i * h_, s, 1);
}

double ConformalChart::s_of_fast(double sb) const {
  const auto& y = *sbar_nodes_;
  const auto& e = *exp_u_nodes_;
  const auto& du = *du_nodes_;
  if (sb < y.front() - 1e-12 || sb > y.back() + 1e-12) throw DomainError("s_of: outside the chart window");
  sb = std::clamp(sb, y.front(), y.back());
  const int n = static_cast<int>(y.size());
  const int i = std::clamp(static_cast<int>(std::upper_bound(y.begin(), y.end(), sb) - y.begin()) - 1, 0, n - 2);
  // quintic Hermite in s̄: ds/ds̄ = e^{-u}, d²s/ds̄² = -u' e^{-2u}
  const double dy = y[i + 1] - y[i];
  const double t = (sb - y[i]) / dy;
  const double x0 = a_ + i * h_;
  const double x1 = x0 + h_;
  const double m0 = dy / e[i];
  const double m1 = dy / e[i + 1];
  const double c0 = -du[i] * dy * dy / (e[i] * e[i]);
  const double c1 = -du[i + 1] * dy * dy / (e[i + 1] * e[i + 1]);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double t5 = t4 * t;
  const double s = x0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + m0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
                   c0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) + c1 * (0.5 * t3 - t4 + 0.5 * t5) +
                   m1 * (-4 * t3 + 7 * t4 - 3 * t5) + x1 * (10 * t3 - 15 * t4 + 6 * t5);
  return std::clamp(s, x0, x1);
}

double ConformalChart::s_of(double sb) const {
  double s = s_of_fast(sb);
  s -= (sbar(s) - sb) * std::exp(-u(s));
  return std::clamp(s, a_, b_);
}

double default_D(const ShrinkerModel& model, double s_q) {
  return std::abs(s_q - model.base_point()) + 10.0 * model.dimension();
}

ConformalChart build_chart(const ShrinkerModel& model, double s_q, std::optional<double> D) {
  const int m = model.dimension();
  if (m <= 2) throw DimensionError("build_chart: conformal exponent 1/(m-2) needs m >= 3");
  const double d = D ? *D : default_D(model, s_q);
  if (!(d >= 10.0 * m)) throw ContractError("build_chart: D must be at least 10m");
  return ConformalChart(model, s_q, d);
}

RicciBar ricci_bar_formula(const ConformalChart& chart, double s) {
  const int m = chart.dimension();
  const Jet F = chart.base().potential.jet(s);
  const double f = F.value();
  const double df = F.derivative(1);
  const double w = std::exp(-2.0 * chart.u(s)) / (m - 2);
  RicciBar r;
  r.s = s;
  r.rad = (df * df + m - 1 - f) * w;
  r.sph = (m - 1 - f) * w;
  r.norm = std::sqrt(r.rad * r.rad + (m - 1) * r.sph * r.sph);
  return r;
}

RicciBar ricci_bar_direct(const ConformalChart& chart, double s) {
  const CurvatureData c = curvature_at(chart.profile(), chart.sbar(s));
  RicciBar r;
  r.s = s;
  r.rad = c.ric_rad;
  r.sph = c.ric_sph;
  r.norm = std::sqrt(r.rad * r.rad + (chart.dimension() - 1) * r.sph * r.sph);
  return r;
}

double ricci_crosscheck(const ConformalChart& chart, double s_lo, double s_hi, int n) {
  if (n < 2) throw ContractError("ricci_crosscheck: need at least two grid points");
  s_lo = std::max(s_lo, chart.s_lo());
  s_hi = std::min(s_hi, chart.s_hi());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (n - 1);
    const RicciBar a = ricci_bar_formula(chart, s);
    const RicciBar b = ricci_bar_direct(chart, s);
    worst = std::max({worst, std::abs(a.rad - b.rad), std::abs(a.sph - b.sph)});
  }
  return worst;
}

RicciBoundReport ricci_bound_check(const ConformalChart& chart, double r, int n) {
  const int m = chart.dimension();
  RicciBoundReport rep;
  rep.radius = r / (10.0 * chart.D());
  rep.bound_d2 = chart.D() * chart.D();
  rep.max_excess_pointwise = -std::numeric_limits<double>::infinity();
  const WarpedProfile& bar = chart.profile();
  // every s̄ with |s̄ - s̄(q)| <= radius is attained inside the ball, and only those
  const double lo = std::max(bar.lo(), -rep.radius);
  const double hi = std::min(bar.hi(), rep.radius);
  const double factor = (m - 1.0) / (m - 2.0) * std::exp(2.0 / (5.0 * (m - 2)));
  for (int i = 0; i < n; ++i) {
    const double s = chart.s_of(lo + (hi - lo) * i / std::max(1, n - 1));
    const RicciBar rb = ricci_bar_formula(chart, s);
    const double f = chart.base().potential.value(s);
    const double pointwise = factor * (1.0 + std::abs(m - 1 - f) / std::sqrt(m - 1.0));
    rep.max_norm = std::max(rep.max_norm, rb.norm);
    rep.max_excess_pointwise = std::max(rep.max_excess_pointwise, rb.norm - pointwise);
    ++rep.samples;
  }
  rep.pass = rep.max_norm < rep.bound_d2 && rep.max_excess_pointwise <= 0.0;
  return rep;
}

SandwichReport ball_sandwich_check(const ConformalChart& chart, double r, int directions) {
  const int m = chart.dimension();
  const WarpedProfile& g = chart.base().profile;
  const WarpedProfile& gbar = chart.profile();
  SandwichReport rep;
  rep.r = r;
  rep.lambda = std::exp(chart.D() * r / (m - 2));
  const double sq = chart.q();
  const double lo = std::max(g.lo(), sq - r);
  const double hi = std::min(g.hi(), sq + r);
  rep.contained = std::abs(sq - chart.base().base_point()) + r < chart.D() && lo >= chart.s_lo() &&
                  hi <= chart.s_hi();
  if (!rep.contained) return rep;

  const ManifoldPoint q{sq, {1.0, 0.0, 0.0}};
  const ManifoldPoint qbar = chart.to_chart(q);
  rep.min_dbar = std::numeric_limits<double>::infinity();
  const int nd = std::max(2, directions);
  for (int k = 0; k < nd; ++k) {
    const double a = std::numbers::pi * k / (nd - 1);
    const ManifoldPoint x = exp_point(g, sq, {r * std::cos(a), r * std::sin(a), 0.0});
    const double db = point_distance(gbar, qbar, chart.to_chart(x));
    rep.max_dbar = std::max(rep.max_dbar, db);
    rep.min_dbar = std::min(rep.min_dbar, db);
  }
  // radius maps along the axis in both directions
  for (int dir : {-1, 1}) {
    double prev = 0.0;
    for (int k = 1; k <= 16; ++k) {
      const double s = sq + dir * r * k / 16.0;
      if (!g.contains(s)) break;
      const double db = std::abs(chart.sbar(s));
      if (!(db > prev)) rep.axis_monotone = false;
      prev = db;
    }
  }
  rep.outer_margin = rep.lambda * r - rep.max_dbar;
  rep.inner_margin = rep.min_dbar - r / rep.lambda;
  rep.pass = rep.outer_margin >= 0.0 && rep.inner_margin >= 0.0 && rep.axis_monotone;
  return rep;
}

DistortionReport distance_distortion_check(const ConformalChart& chart, double r, int pairs,
                                           unsigned seed) {
  const int m = chart.dimension();
  const WarpedProfile& g = chart.base().profile;
  DistortionReport rep;
  rep.r = r;
  rep.lambda = std::exp(chart.D() * r / (m - 2));
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;
  const double R = 0.09 * r;
  for (int k = 0; k < pairs; ++k) {
    const unsigned idx = seed + static_cast<unsigned>(k) + 1;
    const ManifoldPoint x = exp_point(g, chart.q(), halton_ball(idx, R, 2, 3, 5));
    const ManifoldPoint y = exp_point(g, chart.q(), halton_ball(idx, R, 7, 11, 13));
    const double d = point_distance(g, x, y);
    if (d < 1e-12) continue;
    const double db = point_distance(chart.profile(), chart.to_chart(x), chart.to_chart(y));
    const double ratio = db / d;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.worst_ratio = std::max({rep.worst_ratio, ratio, 1.0 / ratio});
    ++rep.pairs;
  }
  rep.pass = rep.pairs > 0 && rep.min_ratio >= 1.0 / rep.lambda && rep.max_ratio <= rep.lambda;
  return rep;
}

GhBoundReport gh_bound_check(const ConformalChart& chart, double rho, double eps_net, double r) {
  const int m = chart.dimension();
  GhBoundReport rep;
  rep.rho = rho;
  rep.eps_net = eps_net;
  rep.budget = 2.0 * chart.D() * rho * rho;
  rep.hypothesis_ok = rho < r / chart.D();

  // steps of 1/64 of each shot's length budget
  GeodesicOptions fast;
  fast.exhaustive = false;
  fast.step_fraction = 1.0;
  const SampledNet net = sample_net(chart.base().profile, chart.q(), rho, eps_net, "g", &fast);
  std::vector<ManifoldPoint> bar_pts;
  for (const auto& x : net.points) bar_pts.push_back(chart.to_chart(x));
  const FiniteMetricSpace X = net.space;
  const FiniteMetricSpace Y = distance_space(chart.profile(), bar_pts, "gbar", nullptr, fast);
  const int n = X.size();
  rep.net_size = n;
  rep.distortion = distortion(X, Y, Correspondence::identity(n));

  const double lip = distortion_lipschitz(X, Y);
  rep.net_slack = 2.0 * net.covering_radius * lip;

  // Hausdorff gap of the two balls: both distance ratios are bounded by e^{max|fbar|/(m-2)}
  // over a region containing the relevant geodesics
  const WarpedProfile& g = chart.base().profile;
  double fmax = 0.0;
  const double lo = std::max(g.lo(), chart.q() - 2.0 * rho);
  const double hi = std::min(g.hi(), chart.q() + 2.0 * rho);
  for (int i = 0; i <= 256; ++i) fmax = std::max(fmax, std::abs(chart.fbar(lo + (hi - lo) * i / 256.0)));
  const double lam = std::exp(fmax / (m - 2));
  rep.set_mismatch = lam * (lam - 1.0) * rho;

  rep.upper = 0.5 * rep.distortion + 0.5 * rep.net_slack + rep.set_mismatch;
  if (0.5 * rep.net_slack > 0.5 * rep.budget)
    throw ResolutionError("gh_bound_check: net slack exceeds half the budget; refine the net");
  rep.pass = rep.upper < rep.budget && 0.5 * rep.net_slack < 0.2 * rep.budget;
  return rep;
}

}  // namespace shrinker
