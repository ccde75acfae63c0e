#include "shrinker/spline.hpp"

#include <algorithm>
#include <cmath>

#include "shrinker/errors.hpp"

namespace shrinker {

CubicSpline::CubicSpline(double lo, double hi, std::vector<double> values, double slope_lo,
                         double slope_hi)
    : lo_(lo), hi_(hi), y_(std::move(values)) {
  const std::size_t n = y_.size();
  if (n < 4) throw ContractError("cubic spline needs at least 4 samples");
  if (!(hi > lo)) throw ContractError("cubic spline needs hi > lo");
  h_ = (hi - lo) / static_cast<double>(n - 1);

  // Tridiagonal system for the node second derivatives (Thomas algorithm).
  std::vector<double> a(n), b(n), c(n), d(n);
  b[0] = 2.0;
  c[0] = 1.0;
  d[0] = 6.0 / h_ * ((y_[1] - y_[0]) / h_ - slope_lo);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i] = 1.0;
    b[i] = 4.0;
    c[i] = 1.0;
    d[i] = 6.0 / (h_ * h_) * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]);
  }
  a[n - 1] = 1.0;
  b[n - 1] = 2.0;
  d[n - 1] = 6.0 / h_ * (slope_hi - (y_[n - 1] - y_[n - 2]) / h_);

  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
}

std::array<double, 4> CubicSpline::evaluate(double x) const {
  const double t = (x - lo_) / h_;
  auto i = static_cast<std::ptrdiff_t>(std::floor(t));
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(y_.size()) - 2);
  const auto k = static_cast<std::size_t>(i);
  const double x0 = lo_ + static_cast<double>(k) * h_;
  const double A = (x0 + h_ - x) / h_;
  const double B = (x - x0) / h_;
  const double m0 = m_[k];
  const double m1 = m_[k + 1];
  const double value = A * y_[k] + B * y_[k + 1] + ((A * A * A - A) * m0 + (B * B * B - B) * m1) * h_ * h_ / 6.0;
  const double d1 = (y_[k + 1] - y_[k]) / h_ - (3.0 * A * A - 1.0) / 6.0 * h_ * m0 +
                    (3.0 * B * B - 1.0) / 6.0 * h_ * m1;
  const double d2 = A * m0 + B * m1;
  const double d3 = (m1 - m0) / h_;
  return {value, d1, d2, d3};
}

double endpoint_slope(const std::vector<double>& y, double h, bool at_lo) {
  if (y.size() < 5) throw ContractError("endpoint_slope needs 5 samples");
  const std::size_t n = y.size();
  if (at_lo) return (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h);
  return (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]) / (12.0 * h);
}

}  // namespace shrinker
