#include "shrinker/quadrature.hpp"

#include <array>
#include <cmath>

namespace shrinker::quad {

namespace {

constexpr std::array<double, 8> kGlNodes = {-0.9602898564975363, -0.7966664774136267,
                                            -0.5255324099163290, -0.1834346424956498,
                                            0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {0.1012285362903763, 0.2223810344533745,
                                              0.3137066458778873, 0.3626837833783620,
                                              0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  if (a == b) return 0.0;
  const double h = (b - a) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double v = f(a + i * h);
    (i % 2 == 1 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  if (a == b) return 0.0;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) acc += kGlWeights[k] * f(mid + 0.5 * h * kGlNodes[k]);
    total += 0.5 * h * acc;
  }
  return total;
}

std::vector<double> cumulative_simpson(const std::function<double(double)>& f, double a, double b,
                                       int n) {
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  const double h = (b - a) / n;
  for (int i = 0; i <= n; ++i) values[i] = f(a + i * h);
  for (int i = 1; i <= n; ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
    } else if (i + 1 <= n) {
      // first half of the parabola through nodes i-1, i, i+1
      out[i] = out[i - 1] + h / 12.0 * (5.0 * values[i - 1] + 8.0 * values[i] - values[i + 1]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i]);
    }
  }
  return out;
}

}  // namespace shrinker::quad
