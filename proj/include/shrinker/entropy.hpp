#pragma once

#include <functional>
#include <vector>

#include "shrinker/model.hpp"

namespace shrinker {

/// Rotationally symmetric reduction of the W-functional on a cell grid of the profile domain.
///
/// Cell i carries the exact volume weights[i] of {s in cell i}; face j couples cells j and j+1
/// with coupling[j] = |S^{m-1}| phi(face)^{m-1} / h, so that sum_j coupling[j] (u_{j+1} - u_j)^2
/// approximates the Dirichlet energy. Zero coupling at capped ends gives the Neumann condition.
struct EntropyProblem {
  int m = 4;
  double tau = 1.0;
  bool closed = false;  ///< both ends are smooth caps
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> coupling;
  std::vector<double> R;
  std::vector<double> f;  ///< potential at the nodes when built from a model (else empty)
};

EntropyProblem make_entropy_problem(const WarpedProfile& profile, double tau, int cells = 1024);
EntropyProblem make_entropy_problem(const ShrinkerModel& model, double tau, int cells = 1024);
EntropyProblem with_tau(EntropyProblem problem, double tau);

/// The problem for (c g, c tau): weights * c^{m/2}, R / c, Dirichlet coupling * c^{m/2 - 1}.
EntropyProblem scaled_problem(const EntropyProblem& problem, double c);

/// sum w u^2.
double l2_norm_sq(const EntropyProblem& problem, const std::vector<double>& u);

/// tau (4 |grad u|^2 + R u^2) - u^2 log u^2 integrated, minus m + (m/2) log(4 pi tau).
/// Throws NormalizationError unless sum w u^2 = 1 to 1e-10.
double w_functional(const EntropyProblem& problem, const std::vector<double>& u);
/// Same expression without the normalization guard.
double w_raw(const EntropyProblem& problem, const std::vector<double>& u);
/// Gradient of w_raw with respect to the node values.
std::vector<double> w_gradient(const EntropyProblem& problem, const std::vector<double>& u);

struct MuResult {
  double mu = 0.0;
  std::vector<double> u;
  int iterations = 0;
  double residual = 0.0;    ///< sup-norm of the Euler-Lagrange residual per unit volume
  bool converged = false;
  bool upper_bound = false; ///< minimization restricted to rotationally symmetric u (tau != 1)
};

/// Minimizes W on the unit sphere of L^2; closed problems only (CapabilityError otherwise).
/// Starts from e^{-f/2} (or the constant), Gaussian bumps at the poles and `warm` when given.
/// Throws ConvergenceError with the best value if the Euler-Lagrange residual stays above 1e-8.
MuResult minimize_mu(const EntropyProblem& problem, const std::vector<double>* warm = nullptr);

/// log of the integral of (4 pi)^{-m/2} e^{-f} over the model domain.
double mu_from_potential(const ShrinkerModel& model);

struct NuRow {
  double tau = 0.0;
  double mu = 0.0;
  bool upper_bound = false;
};

struct NuReport {
  std::vector<NuRow> rows;
  double nu = 0.0;        ///< minimum over the grid
  double argmin_tau = 0.0;
  bool argmin_at_one = false;  ///< argmin is the grid point nearest tau = 1
  bool pattern_ok = false;     ///< non-increasing before it, non-decreasing after
};

/// 9 geometric points on [0.25, 4] including 1.
std::vector<double> default_tau_grid();

NuReport nu_check(const EntropyProblem& problem, const std::vector<double>& tau_grid);

/// |mu(c g, c tau) - mu(g, tau)|.
double scaling_check(const EntropyProblem& problem, double c);

struct SobolevRow {
  double ratio = 0.0;       ///< (int u^{2m/(m-2)})^{(m-2)/m} / int (4|grad u|^2 + R u^2)
  double jensen_lhs = 0.0;  ///< int u^2 log u^2 for the normalized trial
  double jensen_rhs = 0.0;  ///< (m-2)/2 log int u^{2m/(m-2)}
  bool jensen_ok = false;
};

struct SobolevReport {
  std::vector<SobolevRow> rows;
  double best_constant = 0.0;  ///< max ratio over trials
  bool finite = false;
  bool jensen_ok = false;
};

/// Trials are functions of s; each is normalized before use. Requires R > 0 (RangeError).
SobolevReport sobolev_check(const EntropyProblem& problem,
                            const std::vector<std::function<double(double)>>& trials);

struct VolumeMuReport {
  double volume = 0.0;     ///< |B(p, 1)|
  double mu = 0.0;
  double log_ratio = 0.0;  ///< log(|B(p,1)| / ((4 pi)^{m/2} e^mu))
  double log_lower = 0.0;  ///< -2^{4m+7}
  double log_upper = 0.0;  ///< m
  bool pass = false;
};

VolumeMuReport volume_mu_check(const ShrinkerModel& model);

}  // namespace shrinker
