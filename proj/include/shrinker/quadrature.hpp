#pragma once

#include <functional>
#include <vector>

namespace shrinker::quad {

inline constexpr int kDefaultPanels = 4096;

/// Composite Simpson rule with an even number of panels.
double simpson(const std::function<double(double)>& f, double a, double b,
               int panels = kDefaultPanels);

/// Composite 8-point Gauss-Legendre rule; no endpoint evaluations.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 64);

/// Cumulative Simpson integral on a uniform grid of n+1 nodes; entry i holds the integral
/// from a to a + i*(b-a)/n. Odd intervals are closed with a 3-point quadratic rule.
std::vector<double> cumulative_simpson(const std::function<double(double)>& f, double a, double b,
                                       int n);

}  // namespace shrinker::quad
