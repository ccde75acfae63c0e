#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "shrinker/model.hpp"
#include "shrinker/points.hpp"

namespace shrinker {

/// The metric gbar = e^{2u} g with u = (f(q) - f)/(m-2), written again in warped form
/// ds̄^2 + phibar(s̄)^2 g_{S^{m-1}} with s̄ anchored at the base point q (s̄(q) = 0).
class ConformalChart {
 public:
  /// Window half-width (in s) used on noncompact models.
  static constexpr double kWindow = 6.0;

  ConformalChart(const ShrinkerModel& base, double s_q, double D, int nodes = 8192);

  const ShrinkerModel& base() const { return *base_; }
  int dimension() const { return base_->dimension(); }
  double q() const { return s_q_; }
  double D() const { return D_; }
  double f_q() const { return f_q_; }
  /// s-window covered by the chart.
  double s_lo() const { return a_; }
  double s_hi() const { return b_; }

  double fbar(double s) const;
  /// Conformal exponent u(s) = -fbar(s)/(m-2).
  double u(double s) const;
  double sbar(double s) const;
  double s_of(double sbar) const;
  /// Table interpolation of s_of without the quadrature polish (error ~1e-14 on the default table).
  double s_of_fast(double sbar) const;
  /// gbar as a warped profile in the s̄ coordinate.
  const WarpedProfile& profile() const { return *profile_; }

  /// Same point expressed in chart coordinates.
  ManifoldPoint to_chart(const ManifoldPoint& x) const { return {sbar(x.s), x.omega}; }

 private:
  std::shared_ptr<const ShrinkerModel> base_;
  double s_q_, D_, f_q_;
  double a_, b_, h_;
  std::shared_ptr<std::vector<double>> sbar_nodes_;
  std::shared_ptr<std::vector<double>> exp_u_nodes_;
  std::shared_ptr<std::vector<double>> du_nodes_;
  std::shared_ptr<WarpedProfile> profile_;
};

/// d(p, q) + 10m with d measured along the axis.
double default_D(const ShrinkerModel& model, double s_q);

/// Builds the chart at q; throws DimensionError for m <= 2 and ContractError for D < 10m.
ConformalChart build_chart(const ShrinkerModel& model, double s_q, std::optional<double> D = {});

/// Ricci eigenvalues of gbar (as endomorphisms) and its gbar-norm.
struct RicciBar {
  double s = 0.0;
  double rad = 0.0;
  double sph = 0.0;
  double norm = 0.0;
};

/// From (m-2) Rc̄ = df⊗df + (m-1-f) e^{2 fbar/(m-2)} gbar.
RicciBar ricci_bar_formula(const ConformalChart& chart, double s);
/// Warped-product curvature of (s̄, phibar) directly.
RicciBar ricci_bar_direct(const ConformalChart& chart, double s);

/// max |formula - direct| over both eigenvalues on an n-point grid of [s_lo, s_hi].
double ricci_crosscheck(const ConformalChart& chart, double s_lo, double s_hi, int n = 512);

struct RicciBoundReport {
  double radius = 0.0;     ///< r / (10 D)
  double max_norm = 0.0;   ///< sup |Rc̄| over sampled points of B_gbar(q, r/(10D))
  double bound_d2 = 0.0;   ///< D^2
  double max_excess_pointwise = 0.0;  ///< sup (|Rc̄| - pointwise norm bound), should be < 0
  int samples = 0;
  bool pass = false;
};

/// |Rc̄| < D^2 on B_gbar(q, r/(10D)) together with the pointwise bound
/// ((m-1)/(m-2)) (1 + |m-1-f|/sqrt(m-1)) e^{2/(5(m-2))}.
RicciBoundReport ricci_bound_check(const ConformalChart& chart, double r, int n = 257);

struct SandwichReport {
  double r = 0.0;
  double lambda = 0.0;        ///< e^{Dr/(m-2)}
  double max_dbar = 0.0;      ///< sup over the sphere d(q,x) = r of d_gbar(q, x)
  double min_dbar = 0.0;      ///< inf over the same sphere
  double outer_margin = 0.0;  ///< lambda r - max_dbar
  double inner_margin = 0.0;  ///< min_dbar - r / lambda
  bool axis_monotone = true;
  bool contained = true;      ///< B(q,r) inside B(p,D) and inside the chart window
  bool pass = false;
};

/// B_gbar(q, r/lambda) ⊆ B(q, r) ⊆ B_gbar(q, lambda r), checked on the geodesic sphere of radius r.
SandwichReport ball_sandwich_check(const ConformalChart& chart, double r, int directions = 33);

struct DistortionReport {
  double r = 0.0;
  double lambda = 0.0;
  double worst_ratio = 1.0;  ///< sup max(dbar/d, d/dbar)
  double min_ratio = 1.0;    ///< inf dbar/d
  double max_ratio = 1.0;    ///< sup dbar/d
  int pairs = 0;
  bool pass = false;
};

/// e^{-Dr/(m-2)} d <= d_gbar <= e^{Dr/(m-2)} d on quasi-random pairs of B(q, 0.09 r).
DistortionReport distance_distortion_check(const ConformalChart& chart, double r, int pairs = 64,
                                           unsigned seed = 42);

struct GhBoundReport {
  double rho = 0.0;
  double eps_net = 0.0;
  int net_size = 0;
  double distortion = 0.0;    ///< identity-correspondence distortion on the net
  double net_slack = 0.0;     ///< 2 eps L_est, extension of the distortion bound off the net
  double set_mismatch = 0.0;  ///< Hausdorff gap between B(q,rho) and B_gbar(q,rho) in gbar
  double upper = 0.0;         ///< distortion/2 + slack/2 + mismatch
  double budget = 0.0;        ///< 2 D rho^2
  bool hypothesis_ok = true;  ///< rho < r/D
  bool pass = false;
};

/// GH upper bound between B_gbar(q, rho) and B(q, rho) against 2 D rho^2.
GhBoundReport gh_bound_check(const ConformalChart& chart, double rho, double eps_net,
                             double r = 1.0);

}  // namespace shrinker
