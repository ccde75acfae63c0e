#pragma once

#include <array>
#include <vector>

namespace shrinker {

/// Clamped cubic spline on a uniform grid.
class CubicSpline {
 public:
  CubicSpline() = default;
  /// `values` sampled at lo + i*h; end slopes are imposed (clamped conditions).
  CubicSpline(double lo, double hi, std::vector<double> values, double slope_lo, double slope_hi);

  /// Value and first three derivatives at x (third derivative is piecewise constant).
  std::array<double, 4> evaluate(double x) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return y_.size(); }

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
  double h_ = 1.0;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at nodes
};

/// One-sided fourth-order slope estimate from the first five samples.
double endpoint_slope(const std::vector<double>& y, double h, bool at_lo);

}  // namespace shrinker
