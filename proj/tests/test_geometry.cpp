#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shrinker/errors.hpp"
#include "shrinker/geodesic.hpp"
#include "shrinker/model.hpp"
#include "shrinker/volume.hpp"

using namespace shrinker;
using std::numbers::pi;

TEST_CASE("round profile has constant curvature 1/r0^2") {
  const double r0 = std::sqrt(6.0);
  const auto prof = round_profile(4, r0);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(prof.lo(), prof.hi());
  for (int i = 0; i < 50; ++i) {
    const auto c = curvature_at(prof, U(rng));
    CHECK(c.k_rad == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(c.k_sph == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  }
  // at the poles the series branch takes over
  CHECK(curvature_at(prof, 0.0).k_sph == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(curvature_at(prof, prof.hi()).k_rad == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("flat and cylinder curvature") {
  const auto flat = flat_profile(4, 10.0);
  CHECK(curvature_at(flat, 3.0).scalar == doctest::Approx(0.0));
  const auto cyl = cylinder_profile(4, 2.0, -5.0, 5.0);
  const auto c = curvature_at(cyl, 1.0);
  CHECK(c.k_rad == doctest::Approx(0.0));
  CHECK(c.k_sph == doctest::Approx(0.25));
  CHECK(c.scalar == doctest::Approx(1.5));  // S^3(2): 3*2/4
}

TEST_CASE("analytic phi' agrees with a five-point stencil on the catalog") {
  for (const auto& name : catalog_names()) {
    for (int m : {4, 5}) {
      const auto model = make_model(name, m);
      const auto pc = check_profile(model.profile);
      CHECK(pc.ok());
      CHECK(pc.derivative_error < 1e-5);
    }
  }
}

TEST_CASE("profile domain errors") {
  CHECK_THROWS_AS(round_profile(4, -1.0), DomainError);
  CHECK_THROWS_AS(flat_profile(1, 1.0), DimensionError);
  CHECK_THROWS_AS(flat_profile(4, 1.0).jet(2.0), DomainError);
}

TEST_CASE("ball volumes") {
  const auto g = make_gaussian(4);
  CHECK(ball_volume(g.profile, nullptr, 0.0, 1.0, false) == doctest::Approx(pi * pi / 2).epsilon(1e-9));
  CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2));
  const auto s = make_sphere(4);
  // whole sphere of radius sqrt 6: (8 pi^2 / 3) r0^4 = 96 pi^2
  CHECK(ball_volume(s.profile, nullptr, 0.0, s.profile.hi(), false) == doctest::Approx(96 * pi * pi).epsilon(1e-8));
  CHECK(sphere_cap_area(3, pi) == doctest::Approx(unit_sphere_area(3)));
  CHECK(sphere_cap_area(3, pi / 2) == doctest::Approx(unit_sphere_area(3) / 2));
}

TEST_CASE("Bishop-Gromov ratio is non-increasing on the sphere") {
  const auto s = make_sphere(4);
  double prev = INFINITY;
  for (int k = 1; k <= 20; ++k) {
    const double r = 0.35 * k;
    const double ratio = ball_volume(s.profile, nullptr, 0.0, r, false) / (unit_ball_volume(4) * std::pow(r, 4));
    CHECK(ratio <= prev);
    prev = ratio;
  }
}

TEST_CASE("off-pole shooting volume matches the pole volume on the round sphere") {
  const auto prof = round_profile(4, std::sqrt(6.0));
  for (double r : {0.2, 0.8}) {
    const double ref = ball_volume(prof, nullptr, 0.0, r, false);
    CHECK(ball_volume_shooting(prof, 2.0, r) == doctest::Approx(ref).epsilon(1e-9));
  }
  CHECK_THROWS_AS(ball_volume_shooting(prof, 0.3, 0.5), RangeError);
}

TEST_CASE("slice distances against closed forms") {
  const double r0 = std::sqrt(6.0);
  const auto sph = round_profile(4, r0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> S(0.2, sph.hi() - 0.2), A(0.0, pi);
  for (int i = 0; i < 10; ++i) {
    const double s1 = S(rng), s2 = S(rng), th = A(rng);
    const double a = s1 / r0, b = s2 / r0;
    const double exact = r0 * std::acos(std::cos(a) * std::cos(b) + std::sin(a) * std::sin(b) * std::cos(th));
    CHECK(slice_distance(sph, s1, s2, th) == doctest::Approx(exact).epsilon(1e-8));
  }
  const auto flat = flat_profile(4, 20.0);
  for (int i = 0; i < 10; ++i) {
    const double s1 = 1.0 + 3.0 * A(rng) / pi, s2 = 1.0 + 3.0 * A(rng) / pi, th = A(rng);
    const double exact = std::sqrt(s1 * s1 + s2 * s2 - 2 * s1 * s2 * std::cos(th));
    CHECK(slice_distance(flat, s1, s2, th) == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("geodesic paths conserve energy and the Clairaut constant") {
  const auto prof = make_sphere(4).profile;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> S(0.3, prof.hi() - 0.3), A(0.1, 3.0);
  for (int i = 0; i < 10; ++i) {
    const auto path = geodesic_between(prof, {S(rng), 0.0}, {S(rng), A(rng)});
    CHECK(path.energy_error < 1e-6);
    CHECK(path.clairaut_error < 1e-6);
  }
}
