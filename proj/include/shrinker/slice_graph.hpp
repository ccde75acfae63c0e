#pragma once

#include <vector>

#include "shrinker/geodesic.hpp"
#include "shrinker/profile.hpp"

namespace shrinker {

/// Discrete shortest paths on a uniform (s, theta) grid of the slice ds^2 + phi^2 dtheta^2.
///
/// Edge lengths are the exact warped lengths of the straight coordinate segments
/// (Gauss-Legendre), so the graph distance overestimates the true distance by O(grid spacing).
class SliceGraph {
 public:
  /// Grid with ns nodes on [s_lo, s_hi] and nt nodes on [0, theta_max]; stencil is 8 or 16.
  SliceGraph(const WarpedProfile& profile, double s_lo, double s_hi, double theta_max, int ns,
             int nt, int stencil = 8);

  double ds() const { return ds_; }
  double dtheta() const { return dt_; }
  /// max(ds, sup phi * dtheta): the length scale of one grid step.
  double resolution() const { return resolution_; }

  /// Node index nearest to a slice point, and the snapping distance bound.
  int node(double s, double theta) const;
  SlicePoint point(int node) const;

  /// Dijkstra distance between two nodes.
  double distance(int a, int b) const;

 private:
  int ns_, nt_;
  double s_lo_, ds_, dt_;
  double resolution_ = 0.0;
  struct Offset {
    int di, dj;
  };
  std::vector<Offset> offsets_;
  std::vector<double> edge_;  // edge_[i * offsets + k]: length of edge from row i along offset k
};

/// Graph distance between slice points using a window around both points (snapped to nodes);
/// the returned error bound adds the snapping distances.
double graph_slice_distance(const WarpedProfile& profile, SlicePoint p, SlicePoint q, int ns = 200,
                            int nt = 200, double* resolution = nullptr);

}  // namespace shrinker
