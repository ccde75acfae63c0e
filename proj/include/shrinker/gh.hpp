#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shrinker/points.hpp"

namespace shrinker {

/// Pointed finite metric space with a dense distance matrix.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  /// `d` is row-major n x n; validated on construction.
  FiniteMetricSpace(int n, std::vector<double> d, int basepoint = 0, std::string tag = {},
                    double tol = 1e-9);

  int size() const { return n_; }
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  int basepoint() const { return base_; }
  const std::string& tag() const { return tag_; }
  double diameter() const;

  /// Worst violation of symmetry, zero diagonal and the triangle inequality.
  double axiom_violation() const;

  nlohmann::json to_json() const;
  static FiniteMetricSpace from_json(const nlohmann::json& j);

 private:
  int n_ = 0;
  std::vector<double> d_;
  int base_ = 0;
  std::string tag_;
};

/// Relation between index sets of X and Y.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
  static Correspondence identity(int n);
};

/// max |d_X(i,i') - d_Y(j,j')| over pairs of related pairs; throws ContractError unless the
/// relation is surjective onto both sides.
/// Matches points by distance to the basepoint: each i to the j with closest d_Y(b, j) and each
/// j to the closest i, so the relation is surjective for any sizes.
Correspondence radial_correspondence(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Correspondence& c);

double gh_upper(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const Correspondence& c);

/// max of |diam X - diam Y|/2 and the packing obstruction (s_k(X) - s_k(Y))/2, where s_k is the
/// best minimum separation of k points (exact up to 12 points).
double gh_lower(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

/// Exact GH distance for spaces of at most kExactLimit points.
inline constexpr int kExactLimit = 7;
double gh_exact_small(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

/// Empirical Lipschitz constant of the pair function d_Y - d_X under moves of one point to one
/// of its `neighbors` nearest neighbors in X; used to extend a net distortion off the net.
double distortion_lipschitz(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                            int neighbors = 6);

/// Distances between sampled points with the BVP solver (a failed secant solve is retried with
/// the full scan), falling back to the slice graph.
struct NetDistanceStats {
  int fallbacks = 0;
  double fallback_tolerance = 0.0;  ///< largest graph resolution used
};

FiniteMetricSpace distance_space(const WarpedProfile& profile, const std::vector<ManifoldPoint>& pts,
                                 const std::string& tag, NetDistanceStats* stats = nullptr,
                                 const GeodesicOptions& options = {});

/// A net of B(q, R) (q on the axis at s_q) under the given metric. The covering radius is
/// verified against 2000 quasi-random points of the ball, measured in normal coordinates and
/// scaled by the worst observed metric/normal distance ratio.
struct SampledNet {
  std::vector<std::array<double, 3>> vectors;  ///< normal coordinates at q
  std::vector<ManifoldPoint> points;
  FiniteMetricSpace space;
  double covering_radius = 0.0;
  NetDistanceStats stats;
};

/// Distances use `options` when given, else the secant fast path with default steps.
SampledNet sample_net(const WarpedProfile& profile, double s_q, double R, double eps_net,
                      const std::string& tag = {}, const GeodesicOptions* options = nullptr);

}  // namespace shrinker
