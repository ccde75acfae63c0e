#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shrinker/errors.hpp"
#include "shrinker/gaussian_experiment.hpp"

using namespace shrinker;

TEST_CASE("inverse erfc values") {
  const auto one = erfc_inverse(1.0);
  CHECK(one.A == doctest::Approx(0.0));
  CHECK(one.B == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)));
  const auto half = erfc_inverse(0.5);
  CHECK(half.A == doctest::Approx(0.4769362762044699).epsilon(1e-12));
  CHECK(std::abs(std::erfc(half.A) - 0.5) < 1e-12);
  // A'(x) = -1/B by central differences
  const double h = 1e-6;
  const double fd = (erfc_inverse(0.5 + h).A - erfc_inverse(0.5 - h).A) / (2 * h);
  CHECK(fd == doctest::Approx(-1.0 / half.B).epsilon(1e-6));
  CHECK_THROWS_AS(erfc_inverse(0.0), DomainError);
  CHECK_THROWS_AS(erfc_inverse(2.0), DomainError);
  CHECK(erfc_inverse_tail(1e-300).A > 26.0);
}

TEST_CASE("inverse erfc identities") {
  const auto r = erfc_suite(erfc_grid());
  CHECK(r.identities_ok);
  CHECK(r.dA < 1e-6);
  CHECK(r.d2A < 1e-6);
  CHECK(r.dB < 1e-6);
  CHECK(r.d2B < 1e-6);
  CHECK(r.dphi < 1e-8);
  // the ratios creep toward 1 along the tail
  double prev_a = 0.0;
  for (const auto& t : r.tail) {
    CHECK(t.ratio_A > prev_a);
    CHECK(t.ratio_A < 1.0);
    prev_a = t.ratio_A;
  }
}

TEST_CASE("conformal Gaussian constants") {
  const auto cg = build_conformal_gaussian(4);
  CHECK(cg.beta == doctest::Approx(0.25));
  CHECK(cg.a == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));
  CHECK(cg.s_max == doctest::Approx(std::sqrt(2 * std::numbers::pi)));
  // phi'(s*) = 0 where A(a s*) = 1/sqrt 2, i.e. a s* = erfc(1/sqrt 2)
  CHECK(cg.s_star == doctest::Approx(0.7953794908467029).epsilon(1e-8));
  for (double r : {0.1, 1.0, 3.0}) CHECK(cg.r_of_s(cg.s_of_r(r)) == doctest::Approx(r).epsilon(1e-8));
  for (int i = 1; i <= 100; ++i) {
    const double s = cg.s0 * i / 100;
    CHECK(cg.profile.phi(s) >= s * (1 - 1e-12));
  }
  CHECK(cg.profile.phi(cg.s0 * 1.0001) < cg.s0 * 1.0001);
  CHECK(cg.s_of_r(threshold_L(cg)) == doctest::Approx(cg.s0 / 4).epsilon(1e-8));
  CHECK(cg.profile.dphi(1e-8) > 5.0);
  CHECK_THROWS_AS(build_conformal_gaussian(2), DimensionError);
}

TEST_CASE("antipodal gap at eps = 0.1") {
  const auto cg = build_conformal_gaussian(4);
  const auto g = antipodal_gap(cg, 0.1);
  CHECK(g.through_tip == 0.2);
  CHECK(g.L_geo > 0.2);
  CHECK(g.gap > 1e-3 * 0.2);
  CHECK(g.graph_agrees);
  CHECK_FALSE(g.connecting_found);
  CHECK_THROWS_AS(antipodal_gap(cg, cg.s0 / 4), RangeError);
  const auto grid = eps_grid(cg);
  CHECK(grid.size() == 10);
  CHECK(grid.back() < cg.s0 / 4);
}
