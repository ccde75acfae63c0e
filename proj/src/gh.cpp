#include "shrinker/gh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "shrinker/errors.hpp"
#include "shrinker/slice_graph.hpp"

namespace shrinker {

FiniteMetricSpace::FiniteMetricSpace(int n, std::vector<double> d, int basepoint, std::string tag,
                                     double tol)
    : n_(n), d_(std::move(d)), base_(basepoint), tag_(std::move(tag)) {
  if (n < 1) throw ContractError("FiniteMetricSpace: need at least one point");
  if (d_.size() != static_cast<std::size_t>(n) * n) throw ContractError("FiniteMetricSpace: matrix size mismatch");
  if (basepoint < 0 || basepoint >= n) throw ContractError("FiniteMetricSpace: basepoint out of range");
  for (double v : d_)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ContractError("FiniteMetricSpace: distances must be finite and nonnegative");
  const double scale = std::max(1.0, diameter());
  if (axiom_violation() > tol * scale) throw ContractError("FiniteMetricSpace: metric axioms violated");
}

double FiniteMetricSpace::diameter() const {
  double d = 0.0;
  for (double v : d_) d = std::max(d, v);
  return d;
}

double FiniteMetricSpace::axiom_violation() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    worst = std::max(worst, std::abs((*this)(i, i)));
    for (int j = 0; j < n_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
      for (int k = 0; k < n_; ++k) worst = std::max(worst, (*this)(i, k) - (*this)(i, j) - (*this)(j, k));
    }
  }
  return worst;
}

nlohmann::json FiniteMetricSpace::to_json() const {
  std::vector<double> upper;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) upper.push_back((*this)(i, j));
  nlohmann::json j{{"n", n_}, {"basepoint", base_}, {"d", upper}};
  if (!tag_.empty()) j["tag"] = tag_;
  return j;
}

FiniteMetricSpace FiniteMetricSpace::from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto upper = j.at("d").get<std::vector<double>>();
    if (n < 1 || upper.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
      throw ContractError("FiniteMetricSpace JSON: 'd' must hold n(n-1)/2 entries");
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    std::size_t k = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) d[a * n + b] = d[b * n + a] = upper[k++];
    return FiniteMetricSpace(n, std::move(d), j.value("basepoint", 0), j.value("tag", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed metric-space JSON: ") + e.what());
  }
}

Correspondence Correspondence::identity(int n) {
  Correspondence c;
  for (int i = 0; i < n; ++i) c.pairs.push_back({i, i});
  return c;
}

Correspondence radial_correspondence(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  auto closest = [](const FiniteMetricSpace& A, int i, const FiniteMetricSpace& B) {
    const double target = A(A.basepoint(), i);
    int best = 0;
    for (int j = 1; j < B.size(); ++j) {
      if (std::abs(B(B.basepoint(), j) - target) < std::abs(B(B.basepoint(), best) - target)) best = j;
    }
    return best;
  };
  Correspondence c;
  for (int i = 0; i < X.size(); ++i) c.pairs.push_back({i, closest(X, i, Y)});
  for (int j = 0; j < Y.size(); ++j) c.pairs.push_back({closest(Y, j, X), j});
  std::sort(c.pairs.begin(), c.pairs.end());
  c.pairs.erase(std::unique(c.pairs.begin(), c.pairs.end()), c.pairs.end());
  return c;
}

double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Correspondence& c) {
  std::vector<char> hx(X.size(), 0), hy(Y.size(), 0);
  for (const auto& [i, j] : c.pairs) {
    if (i < 0 || i >= X.size() || j < 0 || j >= Y.size()) throw ContractError("correspondence index out of range");
    hx[i] = hy[j] = 1;
  }
  if (std::count(hx.begin(), hx.end(), 0) || std::count(hy.begin(), hy.end(), 0))
    throw ContractError("correspondence is not surjective onto both spaces");
  double dis = 0.0;
  for (const auto& [i, j] : c.pairs)
    for (const auto& [k, l] : c.pairs) dis = std::max(dis, std::abs(X(i, k) - Y(j, l)));
  return dis;
}

double gh_upper(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Correspondence& c) {
  return 0.5 * distortion(X, Y, c);
}

namespace {

// s_k for k = 0..n: best minimum pairwise separation over k-point subsets (s_0 = s_1 = inf).
std::vector<double> separation_profile(const FiniteMetricSpace& X) {
  const int n = X.size();
  std::vector<double> best(n + 1, 0.0);
  if (n > 12) {
    best.assign(3, 0.0);
    best[2] = X.diameter();
    return best;
  }
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    double sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int j = i + 1; j < n; ++j)
        if (mask >> j & 1u) sep = std::min(sep, X(i, j));
    }
    best[k] = std::max(best[k], sep);
  }
  return best;
}

}  // namespace

double gh_lower(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  double lb = 0.5 * std::abs(X.diameter() - Y.diameter());
  const auto sx = separation_profile(X);
  const auto sy = separation_profile(Y);
  const std::size_t kmax = std::max(sx.size(), sy.size());
  for (std::size_t k = 2; k < kmax; ++k) {
    // a k-point set needs k distinct images unless the distortion already exceeds its separation
    const double a = k < sx.size() ? sx[k] : 0.0;
    const double b = k < sy.size() ? sy[k] : 0.0;
    lb = std::max(lb, 0.5 * std::abs(a - b));
  }
  return lb;
}

namespace {

// Does a correspondence of distortion <= delta exist? Variables are one partner for each x and
// each y (graph(f) union graph(g)^T); pairs are encoded as i * nY + j in a 64-bit mask.
class Feasibility {
 public:
  Feasibility(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) : X_(X), Y_(Y), nx_(X.size()), ny_(Y.size()) {
    for (int v = 0; v < nx_ + ny_; ++v) {
      std::uint64_t m = 0;
      for (int w = 0; w < (v < nx_ ? ny_ : nx_); ++w) m |= bit(v < nx_ ? v : w, v < nx_ ? w : v - nx_);
      domain_.push_back(m);
    }
  }

  bool feasible(double delta) {
    const int np = nx_ * ny_;
    compat_.assign(np, 0);
    for (int p = 0; p < np; ++p)
      for (int r = 0; r < np; ++r)
        if (std::abs(X_(p / ny_, r / ny_) - Y_(p % ny_, r % ny_)) <= delta) compat_[p] |= std::uint64_t{1} << r;
    std::vector<char> assigned(nx_ + ny_, 0);
    const std::uint64_t all = np == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << np) - 1;
    return search(all, assigned, 0);
  }

 private:
  static constexpr std::uint64_t one = 1;
  std::uint64_t bit(int i, int j) const { return one << (i * ny_ + j); }

  bool search(std::uint64_t allowed, std::vector<char>& assigned, int depth) {
    if (depth == nx_ + ny_) return true;
    int best = -1;
    int best_count = 1 << 30;
    for (int v = 0; v < nx_ + ny_; ++v) {
      if (assigned[v]) continue;
      const int c = std::popcount(allowed & domain_[v]);
      if (c == 0) return false;  // forward check
      if (c < best_count) {
        best_count = c;
        best = v;
      }
    }
    assigned[best] = 1;
    std::uint64_t opts = allowed & domain_[best];
    while (opts) {
      const int p = std::countr_zero(opts);
      opts &= opts - 1;
      if (search(allowed & compat_[p], assigned, depth + 1)) {
        assigned[best] = 0;
        return true;
      }
    }
    assigned[best] = 0;
    return false;
  }

  const FiniteMetricSpace& X_;
  const FiniteMetricSpace& Y_;
  int nx_, ny_;
  std::vector<std::uint64_t> domain_;
  std::vector<std::uint64_t> compat_;
};

}  // namespace

double gh_exact_small(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  if (X.size() > kExactLimit || Y.size() > kExactLimit)
    throw CapabilityError("gh_exact_small: spaces are limited to 7 points");
  std::vector<double> cand{0.0};
  for (int i = 0; i < X.size(); ++i)
    for (int k = 0; k < X.size(); ++k)
      for (int j = 0; j < Y.size(); ++j)
        for (int l = 0; l < Y.size(); ++l) cand.push_back(std::abs(X(i, k) - Y(j, l)));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  Feasibility feas(X, Y);
  std::size_t lo = 0;
  std::size_t hi = cand.size() - 1;  // the largest candidate is always feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feas.feasible(cand[mid])) hi = mid;
    else lo = mid + 1;
  }
  return 0.5 * cand[lo];
}

FiniteMetricSpace distance_space(const WarpedProfile& profile, const std::vector<ManifoldPoint>& pts,
                                 const std::string& tag, NetDistanceStats* stats,
                                 const GeodesicOptions& options) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double v;
      try {
        v = point_distance(profile, pts[i], pts[j], options);
      } catch (const Error&) {
        if (!options.exhaustive) {
          GeodesicOptions full = options;
          full.exhaustive = true;
          try {
            v = point_distance(profile, pts[i], pts[j], full);
            d[i * n + j] = d[j * n + i] = v;
            continue;
          } catch (const Error&) {
          }
        }
        double res = 0.0;
        v = graph_slice_distance(profile, {pts[i].s, 0.0}, {pts[j].s, direction_angle(pts[i], pts[j])}, 200, 200, &res);
        if (stats) {
          ++stats->fallbacks;
          stats->fallback_tolerance = std::max(stats->fallback_tolerance, res);
        }
      }
      d[i * n + j] = d[j * n + i] = v;
    }
  }
  const double tol = stats && stats->fallbacks > 0 ? 1e-9 + stats->fallback_tolerance : 1e-8;
  return FiniteMetricSpace(n, std::move(d), 0, tag, tol);
}

SampledNet sample_net(const WarpedProfile& profile, double s_q, double R, double eps_net,
                      const std::string& tag, const GeodesicOptions* options) {
  GeodesicOptions fast;
  fast.exhaustive = false;
  if (options) fast = *options;
  double spacing = eps_net;
  for (int attempt = 0; attempt < 5; ++attempt, spacing *= 0.8) {
    SampledNet net;
    net.vectors = ball_net_vectors(R, spacing);
    for (const auto& v : net.vectors) net.points.push_back(exp_point(profile, s_q, v, fast));
    net.space = distance_space(profile, net.points, tag, &net.stats, fast);
    double ratio = 1.0;
    const int n = static_cast<int>(net.vectors.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto& a = net.vectors[i];
        const auto& b = net.vectors[j];
        const double e = std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
        ratio = std::max(ratio, net.space(i, j) / e);
      }
    double cover = 0.0;
    for (unsigned k = 1; k <= 2000; ++k) {
      const auto v = halton_ball(k, R);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : net.vectors)
        best = std::min(best, std::hypot(v[0] - w[0], v[1] - w[1], v[2] - w[2]));
      cover = std::max(cover, best);
    }
    net.covering_radius = cover * ratio;
    if (net.covering_radius <= eps_net) return net;
  }
  throw ResolutionError("sample_net: could not certify the requested net spacing");
}

double distortion_lipschitz(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, int neighbors) {
  const int n = X.size();
  if (Y.size() != n) throw ContractError("distortion_lipschitz: size mismatch");
  double lip = 0.0;
  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) order[k] = k;
    const int kk = std::min(neighbors + 1, n);
    std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                      [&](int a, int b) { return X(j, a) < X(j, b); });
    for (int t = 1; t < kk; ++t) {
      const int jp = order[t];
      if (X(j, jp) <= 0.0) continue;
      for (int i = 0; i < n; ++i) {
        const double dj = Y(i, j) - X(i, j);
        const double djp = Y(i, jp) - X(i, jp);
        lip = std::max(lip, std::abs(dj - djp) / X(j, jp));
      }
    }
  }
  return lip;
}

}  // namespace shrinker
