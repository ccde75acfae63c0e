#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace shrinker {

/// Truncated Taylor series of order 5 about a fixed base point.
///
/// Coefficient k stores f^(k)(x0) / k!. Arithmetic follows the usual power-series
/// recurrences, so derivatives of composite expressions (profiles, conformal factors,
/// normal-coordinate metrics) are exact up to rounding.
class Jet {
 public:
  static constexpr int kOrder = 5;
  static constexpr std::size_t kSize = kOrder + 1;

  Jet() { c_.fill(0.0); }

  static Jet constant(double v) {
    Jet j;
    j.c_[0] = v;
    return j;
  }

  /// The identity function expanded about x0.
  static Jet variable(double x0) {
    Jet j;
    j.c_[0] = x0;
    j.c_[1] = 1.0;
    return j;
  }

  /// Builds a jet from derivative values f, f', f'', ... (missing entries are zero).
  static Jet from_derivatives(const std::array<double, kSize>& d) {
    Jet j;
    double fact = 1.0;
    for (std::size_t k = 0; k < kSize; ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      j.c_[k] = d[k] / fact;
    }
    return j;
  }

  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }

  double value() const { return c_[0]; }

  /// k-th derivative at the base point.
  double derivative(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[static_cast<std::size_t>(k)] * fact;
  }

  /// Jet of f'. The highest coefficient is lost and set to zero.
  Jet differentiate() const {
    Jet d;
    for (std::size_t k = 0; k + 1 < kSize; ++k) d.c_[k] = static_cast<double>(k + 1) * c_[k + 1];
    return d;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) {
    a.c_[0] += b;
    return a;
  }
  friend Jet operator-(Jet a, double b) {
    a.c_[0] -= b;
    return a;
  }
  friend Jet operator-(const Jet& a) {
    Jet r = a;
    r *= -1.0;
    return r;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k < kSize; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (std::size_t k = 0; k < kSize; ++k) {
      double acc = a.c_[k];
      for (std::size_t i = 0; i < k; ++i) acc -= q.c_[i] * b.c_[k - i];
      q.c_[k] = acc / b.c_[0];
    }
    return q;
  }

  friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

  /// Evaluates the outer series (expanded about inner.value()) at the inner jet.
  Jet compose(const Jet& inner) const {
    Jet h = inner;
    h.c_[0] = 0.0;
    Jet result = Jet::constant(c_[0]);
    Jet power = Jet::constant(1.0);
    for (std::size_t k = 1; k < kSize; ++k) {
      power = power * h;
      result += power * c_[k];
    }
    return result;
  }

 private:
  std::array<double, kSize> c_;
};

inline Jet exp(const Jet& a) {
  Jet e;
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < Jet::kSize; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

inline Jet log(const Jet& a) {
  Jet l;
  l[0] = std::log(a[0]);
  for (std::size_t k = 1; k < Jet::kSize; ++k) {
    double acc = static_cast<double>(k) * a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * l[j] * a[k - j];
    l[k] = acc / (static_cast<double>(k) * a[0]);
  }
  return l;
}

inline Jet sqrt(const Jet& a) {
  Jet s;
  s[0] = std::sqrt(a[0]);
  for (std::size_t k = 1; k < Jet::kSize; ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc / (2.0 * s[0]);
  }
  return s;
}

inline void sincos(const Jet& a, Jet& s, Jet& c) {
  s = Jet();
  c = Jet();
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k < Jet::kSize; ++k) {
    double as = 0.0;
    double ac = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      as += static_cast<double>(j) * a[j] * c[k - j];
      ac += static_cast<double>(j) * a[j] * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
}

inline Jet sin(const Jet& a) {
  Jet s, c;
  sincos(a, s, c);
  return s;
}

inline Jet cos(const Jet& a) {
  Jet s, c;
  sincos(a, s, c);
  return c;
}

inline Jet pow(const Jet& a, double p) { return exp(log(a) * p); }

/// Integer power by repeated multiplication (valid for a[0] <= 0 as well).
inline Jet ipow(const Jet& a, int n) {
  Jet r = Jet::constant(1.0);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

}  // namespace shrinker
