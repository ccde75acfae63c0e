#include <doctest.h>

#include <cmath>

#include "shrinker/errors.hpp"
#include "shrinker/radii.hpp"

using namespace shrinker;

// Reference radii from an independent adaptive quadrature of the ball volumes (scipy): sphere
// |B| = |S^3| int_0^r (r0 sin(t/r0))^3 dt, cylinder |B| = int_{-r}^{r} |cap of S^3(2) of radius
// sqrt(r^2 - t^2)| dt, each solved for |B| / (omega_4 r^4) = 1 - delta with brentq.
TEST_CASE("volume radius against reference quadrature") {
  const auto sphere = make_sphere(4).profile;
  const auto cyl = make_cylinder(4).profile;
  const double sphere_ref[] = {0.4253039685982662, 0.9605764385814847, 1.3762866509976786};
  const double cyl_ref[] = {0.491129787106185, 1.1095467049567103, 1.590325595195843};
  const double deltas[] = {0.01, 0.05, 0.1};
  for (int i = 0; i < 3; ++i) {
    const auto vs = volume_radius(sphere, 0.0, deltas[i]);
    CHECK_FALSE(vs.sentinel);
    CHECK(std::abs(vs.value - sphere_ref[i]) < 2e-6);
    const auto vc = volume_radius(cyl, 0.0, deltas[i]);
    CHECK(std::abs(vc.value - cyl_ref[i]) < 2e-6);
  }
}

TEST_CASE("volume radius is monotone in delta and homogeneous on the sphere") {
  const auto sphere = make_sphere(4).profile;
  CHECK(volume_radius(sphere, 2.0).value == doctest::Approx(volume_radius(sphere, 0.0).value));
  double prev = 0.0;
  for (double d : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const double v = volume_radius(sphere, 0.0, d).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("flat points are degenerate") {
  const auto g = make_gaussian(4);
  const auto vr = volume_radius(g.profile, 0.0);
  CHECK(vr.sentinel);
  CHECK(vr.value == doctest::Approx(volume_cap(g.profile, 0.0)));
  CHECK(volume_ratio(g.profile, 0.0, 3.0) == doctest::Approx(1.0).epsilon(1e-9));
  for (double r : {0.01, 0.5, 1.5}) CHECK(convex_radius_check(g.profile, 0.0, r).expression == 0.0);
  CHECK(convex_radius(g.profile, 0.0).sentinel);
  // only the BVP solver error remains
  CHECK(gh_evaluate(g.profile, 0.0, 1.0).distortion < 1e-6);
}

TEST_CASE("convexity expression on the round sphere") {
  const auto sphere = make_sphere(4).profile;
  const double r0 = std::sqrt(6.0);
  // sup |h - delta| is attained by the tangential components at the outer radius:
  // 1 - (sin x / x)^2 with x = 10 r / r0
  for (double frac : {0.01, 0.1}) {
    const double r = frac * r0 / 10;
    const auto c = convex_radius_check(sphere, 0.0, r);
    const double x = 10 * r / r0;
    CHECK(c.deviation == doctest::Approx(1.0 - std::pow(std::sin(x) / x, 2)).epsilon(1e-10));
    CHECK(c.threshold == doctest::Approx(1e-4));
  }
  {
    // Leading orders of h = F delta - G x x^T with F ~ -rho^2 / (3 r0^2), G ~ -1 / (3 r0^2):
    // sup |dh| ~ 20 r / (3 r0^2) and sup |d^2 h| ~ 2 / (3 r0^2), corrections O((10 r / r0)^2).
    const double r = 0.001 * r0;
    const auto c = convex_radius_check(sphere, 0.0, r);
    CHECK(c.derivative_terms[0] == doctest::Approx(20 * r * r / (3 * r0 * r0)).epsilon(1e-3));
    CHECK(c.derivative_terms[1] == doctest::Approx(2 * r * r / (3 * r0 * r0)).epsilon(1e-3));
    CHECK(c.expression < 1.01 * (c.deviation + c.derivative_terms[0] + c.derivative_terms[1]));
  }
  CHECK(convex_radius_check(sphere, 0.0, 0.001 * r0).pass);
  CHECK_FALSE(convex_radius_check(sphere, 0.0, 0.01 * r0).pass);
  CHECK_FALSE(convex_radius_check(sphere, 0.0, 0.2 * r0).pass);
  CHECK_THROWS_AS(convex_radius_check(sphere, 0.0, r0), RangeError);
  const auto sr = convex_radius(sphere, 0.0);
  CHECK(convex_radius_check(sphere, 0.0, sr.value).pass);
  CHECK_FALSE(convex_radius_check(sphere, 0.0, sr.value * 1.01).pass);
}

TEST_CASE("convexity on the cylinder uses the sphere factor") {
  const auto cyl = make_cylinder(4).profile;
  const auto c = convex_radius_check(cyl, 1.0, 0.002);
  const auto s3 = round_profile(3, 2.0);
  const auto d = convex_radius_check(s3, 0.0, 0.002);
  CHECK(c.expression == doctest::Approx(d.expression).epsilon(1e-12));
  CHECK(convex_supported(cyl, 3.0));
}

TEST_CASE("GH normalized distortion scales like r^2 on the sphere") {
  const auto sphere = make_sphere(4).profile;
  const auto a = gh_evaluate(sphere, 0.0, 0.4);
  const auto b = gh_evaluate(sphere, 0.0, 0.2);
  const double ratio = a.normalized_distortion / b.normalized_distortion;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("bold radii are capped") {
  for (const auto& name : catalog_names()) {
    const auto model = make_model(name, 4);
    const double s = model.base_point() + 0.5;
    const double D = axis_D(model, s);
    const auto b = bold_radii(model.profile, s, D);
    CHECK(b.cap == doctest::Approx(1.0 / (100 * D)));
    CHECK(b.vr <= b.cap);
    CHECK(b.gr <= b.cap);
    if (b.sr_available) CHECK(b.sr <= b.cap);
  }
}

TEST_CASE("density integral scaling") {
  const auto d = density_integral(make_sphere(4), 1.0, 0.5);
  CHECK(d.finite);
  CHECK(d.expected_exponent == 3.0);
  CHECK(d.exponent_ok);
  CHECK_THROWS_AS(density_integral(make_sphere(4), 1.0, 1.5), RangeError);
}
