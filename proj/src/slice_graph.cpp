#include "shrinker/slice_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>

#include "shrinker/errors.hpp"
#include "shrinker/quadrature.hpp"

namespace shrinker {

SliceGraph::SliceGraph(const WarpedProfile& profile, double s_lo, double s_hi, double theta_max,
                       int ns, int nt, int stencil)
    : ns_(ns), nt_(nt), s_lo_(s_lo) {
  if (ns < 3 || nt < 3) throw ContractError("SliceGraph: grid too small");
  if (stencil != 8 && stencil != 16) throw ContractError("SliceGraph: stencil must be 8 or 16");
  if (!profile.contains(s_lo) || !profile.contains(s_hi) || !(s_hi > s_lo))
    throw DomainError("SliceGraph: s-range outside the profile domain");
  ds_ = (s_hi - s_lo) / (ns - 1);
  dt_ = theta_max / (nt - 1);
  offsets_ = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  if (stencil == 16) {
    for (int a : {1, -1})
      for (int b : {2, -2}) {
        offsets_.push_back({a, b});
        offsets_.push_back({b, a});
      }
  }
  double phi_max = 0.0;
  edge_.assign(static_cast<std::size_t>(ns) * offsets_.size(), std::numeric_limits<double>::infinity());
  for (int i = 0; i < ns; ++i) {
    const double s0 = s_lo + i * ds_;
    phi_max = std::max(phi_max, profile.phi(s0));
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      const int i2 = i + offsets_[k].di;
      if (i2 < 0 || i2 >= ns) continue;
      const double dsv = offsets_[k].di * ds_;
      const double dtv = offsets_[k].dj * dt_;
      edge_[i * offsets_.size() + k] = quad::gauss_legendre(
          [&](double tau) {
            const double phi = profile.phi(s0 + tau * dsv);
            return std::sqrt(dsv * dsv + phi * phi * dtv * dtv);
          },
          0.0, 1.0, 2);
    }
  }
  resolution_ = std::max(ds_, phi_max * dt_);
}

int SliceGraph::node(double s, double theta) const {
  const int i = std::clamp(static_cast<int>(std::lround((s - s_lo_) / ds_)), 0, ns_ - 1);
  const int j = std::clamp(static_cast<int>(std::lround(theta / dt_)), 0, nt_ - 1);
  return i * nt_ + j;
}

SlicePoint SliceGraph::point(int node) const {
  return {s_lo_ + (node / nt_) * ds_, (node % nt_) * dt_};
}

double SliceGraph::distance(int a, int b) const {
  const std::size_t n = static_cast<std::size_t>(ns_) * nt_;
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[a] = 0.0;
  heap.push({0.0, a});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (u == b) return d;
    if (d > dist[u]) continue;
    const int i = u / nt_;
    const int j = u % nt_;
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      const int i2 = i + offsets_[k].di;
      const int j2 = j + offsets_[k].dj;
      if (i2 < 0 || i2 >= ns_ || j2 < 0 || j2 >= nt_) continue;
      const double w = edge_[i * offsets_.size() + k];
      const int v = i2 * nt_ + j2;
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.push({dist[v], v});
      }
    }
  }
  return dist[b];
}

double graph_slice_distance(const WarpedProfile& profile, SlicePoint p, SlicePoint q, int ns, int nt,
                            double* resolution) {
  double dth = std::fmod(std::abs(q.theta - p.theta), 2.0 * std::numbers::pi);
  if (dth > std::numbers::pi) dth = 2.0 * std::numbers::pi - dth;
  const double span = std::abs(q.s - p.s) + std::max(profile.phi(p.s), profile.phi(q.s)) * dth;
  const double lo = std::max(profile.lo(), std::min(p.s, q.s) - span);
  const double hi = std::min(profile.hi(), std::max(p.s, q.s) + span);
  SliceGraph g(profile, lo, hi, std::max(dth, 1e-12), ns, nt, 16);
  const int a = g.node(p.s, 0.0);
  const int b = g.node(q.s, dth);
  const auto pa = g.point(a);
  const auto pb = g.point(b);
  const double snap = std::abs(pa.s - p.s) + std::abs(pb.s - q.s);
  if (resolution) *resolution = g.resolution() + snap;
  return g.distance(a, b);
}

}  // namespace shrinker
