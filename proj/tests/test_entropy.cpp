#include <doctest.h>

#include <cmath>

#include "shrinker/entropy.hpp"
#include "shrinker/errors.hpp"

using namespace shrinker;

TEST_CASE("entropy of the round sphere") {
  const auto s = make_sphere(4);
  const auto P = make_entropy_problem(s, 1.0);
  const auto res = minimize_mu(P);
  CHECK(res.converged);
  CHECK(res.mu == doctest::Approx(std::log(6.0) - 2.0).epsilon(1e-3));
  CHECK(mu_from_potential(s) == doctest::Approx(std::log(6.0) - 2.0).epsilon(1e-9));
  // constant u at tau = 2: 2 tau + log 6 - 4 - 2 log tau = log 1.5
  const auto two = minimize_mu(with_tau(P, 2.0));
  CHECK(two.mu == doctest::Approx(std::log(1.5)).epsilon(1e-6));
  CHECK(two.upper_bound);
}

TEST_CASE("Gaussian entropy vanishes") {
  CHECK(std::abs(mu_from_potential(make_gaussian(4))) < 1e-9);
  CHECK(std::abs(mu_from_potential(make_gaussian(5))) < 1e-9);
  CHECK_THROWS_AS(minimize_mu(make_entropy_problem(make_gaussian(4), 1.0)), CapabilityError);
}

TEST_CASE("W requires unit L2 norm") {
  const auto P = make_entropy_problem(make_sphere(4), 1.0);
  std::vector<double> u(P.nodes.size(), 1.0);
  CHECK_THROWS_AS(w_functional(P, u), NormalizationError);
  const double n = std::sqrt(l2_norm_sq(P, u));
  for (auto& v : u) v /= n;
  CHECK_NOTHROW(w_functional(P, u));
}

TEST_CASE("scale invariance and the tau profile") {
  const auto P = make_entropy_problem(make_sphere(4), 1.0);
  CHECK(scaling_check(P, 0.5) < 1e-6);
  CHECK(scaling_check(P, 2.0) < 1e-6);
  const auto nu = nu_check(P, default_tau_grid());
  CHECK(nu.rows.size() == 9);
  CHECK(nu.argmin_at_one);
  CHECK(nu.pattern_ok);
}

TEST_CASE("volume-entropy bracket") {
  for (const auto& name : catalog_names()) CHECK(volume_mu_check(make_model(name, 4)).pass);
}
