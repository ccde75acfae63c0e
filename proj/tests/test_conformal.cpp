#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shrinker/conformal.hpp"
#include "shrinker/errors.hpp"

using namespace shrinker;

TEST_CASE("sphere chart is the identity") {
  const auto s = make_sphere(4);
  const auto c = build_chart(s, 1.0);
  for (double x : {0.5, 1.0, 3.0}) {
    CHECK(c.sbar(x) == doctest::Approx(x - 1.0));
    CHECK(c.profile().phi(c.sbar(x)) == doctest::Approx(s.profile.phi(x)));
  }
  CHECK(ricci_crosscheck(c, c.s_lo(), c.s_hi()) < 1e-11);
  const auto sw = ball_sandwich_check(c, 0.5);
  CHECK(sw.min_dbar == doctest::Approx(0.5));
  CHECK(sw.max_dbar == doctest::Approx(0.5));
  const auto d = distance_distortion_check(c, 0.5);
  CHECK(d.min_ratio == doctest::Approx(1.0));
  CHECK(d.max_ratio == doctest::Approx(1.0));
}

TEST_CASE("Gaussian chart reparametrization") {
  const auto c = build_chart(make_gaussian(4), 0.0);
  CHECK(c.f_q() == doctest::Approx(0.0));
  CHECK(c.D() == doctest::Approx(40.0));
  for (double s : {0.5, 1.0, 2.5}) {
    // int_0^s e^{-u^2/8} du
    const double exact = std::sqrt(2.0 * std::numbers::pi) * std::erf(s / std::sqrt(8.0));
    CHECK(c.sbar(s) == doctest::Approx(exact).epsilon(1e-10));
    CHECK(std::abs(c.s_of(c.sbar(s)) - s) < 1e-8);
  }
  const auto rb = ricci_bar_formula(c, 0.0);
  CHECK(rb.rad == doctest::Approx(1.5));
  CHECK(rb.sph == doctest::Approx(1.5));
  const auto direct = ricci_bar_direct(c, 0.7);
  const auto formula = ricci_bar_formula(c, 0.7);
  CHECK(direct.rad == doctest::Approx(formula.rad).epsilon(1e-8));
  CHECK(direct.sph == doctest::Approx(formula.sph).epsilon(1e-8));
}

TEST_CASE("cylinder chart profile") {
  const auto c = build_chart(make_cylinder(4), 0.0);
  for (double s : {0.3, 1.0, 2.0}) {
    CHECK(c.profile().phi(c.sbar(s)) == doctest::Approx(2.0 * std::exp(-s * s / 8)).epsilon(1e-10));
  }
  const auto c5 = build_chart(make_cylinder(5), 0.0);
  CHECK(ricci_crosscheck(c5, -2.0, 2.0) < 1e-6);
}

TEST_CASE("chart preconditions") {
  CHECK_THROWS_AS(build_chart(make_gaussian(4), 0.0, 14.0), ContractError);
  CHECK_NOTHROW(build_chart(make_gaussian(4), 0.0, 40.0));
}

TEST_CASE("bi-Lipschitz reparametrization") {
  const auto model = make_gaussian(4);
  const auto c = build_chart(model, 1.0);
  double prev = c.sbar(0.0);
  double max_fbar = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double s = 3.0 * i / 50;
    CHECK(c.sbar(s) > prev);
    prev = c.sbar(s);
    max_fbar = std::max(max_fbar, std::abs(c.fbar(s)));
  }
  const double L = std::exp(max_fbar / 2.0);
  for (int i = 1; i <= 50; ++i) {
    const double a = 3.0 * (i - 1) / 50, b = 3.0 * i / 50;
    const double ratio = (c.sbar(b) - c.sbar(a)) / (b - a);
    CHECK(ratio <= L * (1 + 1e-12));
    CHECK(ratio >= (1 - 1e-12) / L);
  }
}

TEST_CASE("Ricci bound and comparison checks on the cylinder") {
  const auto c = build_chart(make_cylinder(4), 0.0);
  for (double r : {0.1, 0.5, 1.0}) CHECK(ricci_bound_check(c, r).pass);
  CHECK(ball_sandwich_check(c, 0.5).pass);
  CHECK(distance_distortion_check(c, 0.5).pass);
  const auto g = gh_bound_check(c, 0.05, 0.025, 0.5);
  CHECK(g.pass);
  CHECK(g.upper < 2 * 40 * 0.05 * 0.05);
}
