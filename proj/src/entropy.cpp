#include "shrinker/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shrinker/curvature.hpp"
#include "shrinker/errors.hpp"
#include "shrinker/quadrature.hpp"
#include "shrinker/volume.hpp"

namespace shrinker {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFloor = 1e-12;

double xlogx2(double u) {
  const double u2 = u * u;
  return u2 > 0.0 ? u2 * std::log(u2) : 0.0;
}

// K u for the Dirichlet form sum_j a_j (u_{j+1} - u_j)^2 = u^T K u.
std::vector<double> stiffness_apply(const std::vector<double>& a, const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double flux = a[j] * (u[j + 1] - u[j]);
    out[j] -= flux;
    out[j + 1] += flux;
  }
  return out;
}

// Thomas algorithm; sub[i] couples rows i and i+1 symmetrically.
std::vector<double> solve_tridiagonal(const std::vector<double>& diag, const std::vector<double>& off,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  double d = diag[0];
  c[0] = n > 1 ? off[0] / d : 0.0;
  rhs[0] /= d;
  for (std::size_t i = 1; i < n; ++i) {
    d = diag[i] - off[i - 1] * c[i - 1];
    if (i + 1 < n) c[i] = off[i] / d;
    rhs[i] = (rhs[i] - off[i - 1] * rhs[i - 1]) / d;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(const EntropyProblem& p, std::vector<double>& u) {
  for (double& v : u) v = std::max(v, kFloor);
  const double nrm = std::sqrt(l2_norm_sq(p, u));
  for (double& v : u) v /= nrm;
}

struct Run {
  std::vector<double> u;
  double w = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

double el_residual(const EntropyProblem& p, const std::vector<double>& u, const std::vector<double>& g,
                   double lambda) {
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    r = std::max(r, std::abs(g[i] - 2.0 * lambda * p.weights[i] * u[i]) / p.weights[i]);
  return r;
}

Run descend(const EntropyProblem& p, std::vector<double> u) {
  const std::size_t n = u.size();
  normalize(p, u);
  // H^1-type preconditioner 8 tau K + W
  std::vector<double> mdiag(n), moff(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) mdiag[i] = p.weights[i];
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = 8.0 * p.tau * p.coupling[j];
    mdiag[j] += a;
    mdiag[j + 1] += a;
    moff[j] = -a;
  }
  Run run;
  double w = w_raw(p, u);
  double t = 1.0;
  for (int it = 0; it < 3000; ++it) {
    const auto g = w_gradient(p, u);
    const auto pg = solve_tridiagonal(mdiag, moff, g);
    std::vector<double> wu(n);
    for (std::size_t i = 0; i < n; ++i) wu[i] = p.weights[i] * u[i];
    const auto q = solve_tridiagonal(mdiag, moff, wu);
    const double alpha = dot(wu, pg) / dot(wu, q);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -(pg[i] - alpha * q[i]);
    const double slope = dot(g, d);
    run.iterations = it + 1;
    if (!(slope < -1e-15)) break;
    t = std::min(1.0, 4.0 * t);
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = u[i] + t * d[i];
      normalize(p, v);
      const double wv = w_raw(p, v);
      if (wv <= w + 1e-4 * t * slope) {
        u = std::move(v);
        w = wv;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  run.u = std::move(u);
  run.w = w;
  return run;
}

// Newton on the Euler-Lagrange system g(u) = 2 lambda W u, u^T W u = 1 (bordered tridiagonal).
void polish(const EntropyProblem& p, Run& run) {
  const std::size_t n = run.u.size();
  auto& u = run.u;
  for (int it = 0; it < 40; ++it) {
    const auto g = w_gradient(p, u);
    std::vector<double> wu(n);
    for (std::size_t i = 0; i < n; ++i) wu[i] = p.weights[i] * u[i];
    const double lambda = dot(u, g) / (2.0 * dot(u, wu));
    run.residual = el_residual(p, u, g, lambda);
    if (run.residual < 1e-10) break;
    std::vector<double> diag(n), off(n > 0 ? n - 1 : 0), F(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double l2 = std::log(std::max(u[i] * u[i], 1e-300));
      diag[i] = p.weights[i] * (2.0 * p.tau * p.R[i] - (2.0 * l2 + 6.0) - 2.0 * lambda);
      F[i] = -(g[i] - 2.0 * lambda * wu[i]);
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double a = 8.0 * p.tau * p.coupling[j];
      diag[j] += a;
      diag[j + 1] += a;
      off[j] = -a;
    }
    const double c = dot(u, wu) - 1.0;
    const auto x1 = solve_tridiagonal(diag, off, F);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = 2.0 * wu[i];
    const auto x2 = solve_tridiagonal(diag, off, b);
    const double dl = (-c - 2.0 * dot(wu, x1)) / (2.0 * dot(wu, x2));
    double step = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double du = x1[i] + dl * x2[i];
      if (u[i] + du <= 0.0) step = std::min(step, 0.5 * u[i] / -du);
    }
    for (std::size_t i = 0; i < n; ++i) u[i] += step * (x1[i] + dl * x2[i]);
    normalize(p, u);
  }
  const auto g = w_gradient(p, u);
  std::vector<double> wu(n);
  for (std::size_t i = 0; i < n; ++i) wu[i] = p.weights[i] * u[i];
  run.residual = el_residual(p, u, g, dot(u, g) / (2.0 * dot(u, wu)));
  run.w = w_raw(p, u);
}

}  // namespace

EntropyProblem make_entropy_problem(const WarpedProfile& profile, double tau, int cells) {
  if (!(tau > 0.0)) throw ContractError("entropy problem: tau must be positive");
  if (cells < 8) throw ContractError("entropy problem: too few cells");
  EntropyProblem p;
  p.m = profile.dimension();
  p.tau = tau;
  p.closed = profile.lo_kind() == EndKind::SmoothCap && profile.hi_kind() == EndKind::SmoothCap;
  const double h = profile.length() / cells;
  const double area = unit_sphere_area(p.m - 1);
  const auto density = [&](double s) { return area * std::pow(std::max(profile.phi(s), 0.0), p.m - 1); };
  for (int i = 0; i < cells; ++i) {
    const double a = profile.lo() + i * h;
    const double c = a + 0.5 * h;
    p.nodes.push_back(c);
    p.weights.push_back(quad::gauss_legendre(density, a, a + h, 2));
    p.R.push_back(curvature_at(profile, c).scalar);
    if (i + 1 < cells) p.coupling.push_back(density(a + h) / h);
  }
  return p;
}

EntropyProblem make_entropy_problem(const ShrinkerModel& model, double tau, int cells) {
  EntropyProblem p = make_entropy_problem(model.profile, tau, cells);
  for (double s : p.nodes) p.f.push_back(model.potential.value(s));
  return p;
}

EntropyProblem with_tau(EntropyProblem problem, double tau) {
  if (!(tau > 0.0)) throw ContractError("entropy problem: tau must be positive");
  problem.tau = tau;
  return problem;
}

EntropyProblem scaled_problem(const EntropyProblem& problem, double c) {
  if (!(c > 0.0)) throw ContractError("scaled_problem: c must be positive");
  EntropyProblem p = problem;
  const double vol = std::pow(c, 0.5 * p.m);
  p.tau *= c;
  for (double& s : p.nodes) s *= std::sqrt(c);
  for (double& w : p.weights) w *= vol;
  for (double& a : p.coupling) a *= vol / c;
  for (double& r : p.R) r /= c;
  return p;
}

double l2_norm_sq(const EntropyProblem& problem, const std::vector<double>& u) {
  if (u.size() != problem.weights.size()) throw ContractError("entropy: vector size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += problem.weights[i] * u[i] * u[i];
  return s;
}

double w_raw(const EntropyProblem& p, const std::vector<double>& u) {
  if (u.size() != p.weights.size()) throw ContractError("entropy: vector size mismatch");
  double grad = 0.0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) grad += p.coupling[j] * (u[j + 1] - u[j]) * (u[j + 1] - u[j]);
  double pot = 0.0;
  double ent = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    pot += p.weights[i] * p.R[i] * u[i] * u[i];
    ent += p.weights[i] * xlogx2(u[i]);
  }
  return p.tau * (4.0 * grad + pot) - ent - p.m - 0.5 * p.m * std::log(4.0 * kPi * p.tau);
}

double w_functional(const EntropyProblem& problem, const std::vector<double>& u) {
  if (std::abs(l2_norm_sq(problem, u) - 1.0) > 1e-10)
    throw NormalizationError("W-functional: u must satisfy int u^2 dv = 1");
  return w_raw(problem, u);
}

std::vector<double> w_gradient(const EntropyProblem& p, const std::vector<double>& u) {
  auto g = stiffness_apply(p.coupling, u);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double l2 = u[i] != 0.0 ? std::log(u[i] * u[i]) : 0.0;
    g[i] = p.tau * (8.0 * g[i] + 2.0 * p.weights[i] * p.R[i] * u[i]) -
           p.weights[i] * (2.0 * u[i] * l2 + 2.0 * u[i]);
  }
  return g;
}

MuResult minimize_mu(const EntropyProblem& problem, const std::vector<double>* warm) {
  if (!problem.closed) throw CapabilityError("minimize_mu: only closed models are supported");
  const std::size_t n = problem.nodes.size();
  std::vector<std::vector<double>> starts;
  std::vector<double> base(n, 1.0);
  if (!problem.f.empty())
    for (std::size_t i = 0; i < n; ++i) base[i] = std::exp(-0.5 * problem.f[i]);
  starts.push_back(base);
  // pole bumps: the Euclidean minimizer profile e^{-|x|^2/(8 tau)}
  const double lo = problem.nodes.front();
  const double hi = problem.nodes.back();
  for (double pole : {lo, hi}) {
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = problem.nodes[i] - pole;
      b[i] = std::exp(-d * d / (8.0 * problem.tau));
    }
    starts.push_back(b);
  }
  if (warm && warm->size() == n) starts.push_back(*warm);

  Run best;
  best.w = std::numeric_limits<double>::infinity();
  int iterations = 0;
  for (const auto& s : starts) {
    Run r = descend(problem, s);
    polish(problem, r);
    iterations += r.iterations;
    if (r.w < best.w - 1e-12 || (std::abs(r.w - best.w) <= 1e-12 && r.residual < best.residual)) best = r;
  }
  MuResult out;
  out.mu = best.w;
  out.u = best.u;
  out.iterations = iterations;
  out.residual = best.residual;
  out.converged = best.residual < 1e-8;
  out.upper_bound = std::abs(problem.tau - 1.0) > 1e-12;
  if (!out.converged)
    throw ConvergenceError("minimize_mu: Euler-Lagrange residual above 1e-8", out.mu, out.mu, out.mu);
  return out;
}

double mu_from_potential(const ShrinkerModel& model) {
  const double mass = total_volume(model.profile, &model.potential, true);
  return std::log(mass) - 0.5 * model.dimension() * std::log(4.0 * kPi);
}

std::vector<double> default_tau_grid() {
  std::vector<double> g;
  for (int k = -4; k <= 4; ++k) g.push_back(std::pow(2.0, 0.5 * k));
  g[4] = 1.0;
  return g;
}

NuReport nu_check(const EntropyProblem& problem, const std::vector<double>& tau_grid) {
  if (tau_grid.empty()) throw ContractError("nu_check: empty tau grid");
  NuReport rep;
  std::vector<double> order = tau_grid;
  std::sort(order.begin(), order.end());
  // warm starts sweep outward from tau = 1
  std::size_t one = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (std::abs(std::log(order[k])) < std::abs(std::log(order[one]))) one = k;
  rep.rows.resize(order.size());
  auto solve = [&](std::size_t k, const std::vector<double>* warm) {
    const MuResult r = minimize_mu(with_tau(problem, order[k]), warm);
    rep.rows[k] = {order[k], r.mu, r.upper_bound};
    return r.u;
  };
  const auto u_one = solve(one, nullptr);
  auto u = u_one;
  for (std::size_t k = one + 1; k < order.size(); ++k) u = solve(k, &u);
  u = u_one;
  for (std::size_t k = one; k-- > 0;) u = solve(k, &u);

  std::size_t arg = 0;
  for (std::size_t k = 1; k < order.size(); ++k)
    if (rep.rows[k].mu < rep.rows[arg].mu) arg = k;
  rep.nu = rep.rows[arg].mu;
  rep.argmin_tau = order[arg];
  rep.argmin_at_one = arg == one;
  rep.pattern_ok = true;
  constexpr double tol = 1e-9;
  for (std::size_t k = 0; k + 1 <= one && k + 1 < order.size(); ++k)
    if (rep.rows[k + 1].mu > rep.rows[k].mu + tol) rep.pattern_ok = false;
  for (std::size_t k = one; k + 1 < order.size(); ++k)
    if (rep.rows[k + 1].mu < rep.rows[k].mu - tol) rep.pattern_ok = false;
  return rep;
}

double scaling_check(const EntropyProblem& problem, double c) {
  const double a = minimize_mu(problem).mu;
  const double b = minimize_mu(scaled_problem(problem, c)).mu;
  return std::abs(a - b);
}

SobolevReport sobolev_check(const EntropyProblem& p,
                            const std::vector<std::function<double(double)>>& trials) {
  for (double r : p.R)
    if (!(r > 0.0)) throw RangeError("sobolev_check: needs R > 0");
  const double q = 2.0 * p.m / (p.m - 2.0);
  SobolevReport rep;
  rep.finite = true;
  rep.jensen_ok = true;
  for (const auto& trial : trials) {
    std::vector<double> u(p.nodes.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::abs(trial(p.nodes[i]));
    const double nrm = std::sqrt(l2_norm_sq(p, u));
    if (!(nrm > 0.0)) throw ContractError("sobolev_check: trial function vanishes");
    for (double& v : u) v /= nrm;
    double grad = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) grad += p.coupling[j] * (u[j + 1] - u[j]) * (u[j + 1] - u[j]);
    double pot = 0.0, lq = 0.0, ent = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      pot += p.weights[i] * p.R[i] * u[i] * u[i];
      lq += p.weights[i] * std::pow(u[i], q);
      ent += p.weights[i] * xlogx2(u[i]);
    }
    SobolevRow row;
    row.ratio = std::pow(lq, 2.0 / q) / (4.0 * grad + pot);
    row.jensen_lhs = ent;
    row.jensen_rhs = 0.5 * (p.m - 2) * std::log(lq);
    row.jensen_ok = row.jensen_lhs <= row.jensen_rhs + 1e-12;
    rep.best_constant = std::max(rep.best_constant, row.ratio);
    rep.finite = rep.finite && std::isfinite(row.ratio);
    rep.jensen_ok = rep.jensen_ok && row.jensen_ok;
    rep.rows.push_back(row);
  }
  return rep;
}

VolumeMuReport volume_mu_check(const ShrinkerModel& model) {
  const int m = model.dimension();
  VolumeMuReport rep;
  rep.volume = ball_volume(model.profile, nullptr, model.base_point(), 1.0, false);
  rep.mu = mu_from_potential(model);
  rep.log_ratio = std::log(rep.volume) - 0.5 * m * std::log(4.0 * kPi) - rep.mu;
  rep.log_lower = -std::ldexp(1.0, 4 * m + 7);
  rep.log_upper = m;
  rep.pass = rep.log_ratio >= rep.log_lower && rep.log_ratio <= rep.log_upper;
  return rep;
}

}  // namespace shrinker
