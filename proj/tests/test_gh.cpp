#include <doctest.h>

#include <cmath>
#include <random>

#include "shrinker/errors.hpp"
#include "shrinker/gh.hpp"

using namespace shrinker;

namespace {

FiniteMetricSpace two_point(double a) { return FiniteMetricSpace(2, {0.0, a, a, 0.0}); }

FiniteMetricSpace random_planar(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> x(n), y(n), d(n * n);
  for (int i = 0; i < n; ++i) x[i] = U(rng), y[i] = U(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
  return FiniteMetricSpace(n, d);
}

}  // namespace

TEST_CASE("two-point spaces") {
  for (auto [a, b] : {std::pair{1.0, 3.0}, {0.25, 0.5}, {2.0, 2.0}}) {
    const double exact = std::abs(a - b) / 2.0;
    CHECK(gh_exact_small(two_point(a), two_point(b)) == exact);
    CHECK(gh_lower(two_point(a), two_point(b)) == exact);
    CHECK(gh_upper(two_point(a), two_point(b), Correspondence::identity(2)) == exact);
  }
}

TEST_CASE("metric axioms are validated") {
  CHECK_THROWS_AS(FiniteMetricSpace(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}), ContractError);
  CHECK_THROWS_AS(FiniteMetricSpace(2, {0, 1, 2, 0}), ContractError);
}

TEST_CASE("correspondences") {
  std::mt19937 rng(1);
  const auto X = random_planar(rng, 4);
  const auto Y = random_planar(rng, 3);
  CHECK(distortion(X, X, Correspondence::identity(4)) == 0.0);
  Correspondence partial;
  partial.pairs = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(distortion(X, Y, partial), ContractError);
  const auto c = radial_correspondence(X, Y);
  CHECK_NOTHROW(distortion(X, Y, c));
}

TEST_CASE("lower <= exact <= upper on random small spaces") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> n(1, 6);
  for (int k = 0; k < 30; ++k) {
    const auto X = random_planar(rng, n(rng));
    const auto Y = random_planar(rng, n(rng));
    const double lo = gh_lower(X, Y), ex = gh_exact_small(X, Y);
    const double up = gh_upper(X, Y, radial_correspondence(X, Y));
    CHECK(lo <= ex + 1e-12);
    CHECK(ex <= up + 1e-12);
    CHECK(gh_exact_small(Y, X) == doctest::Approx(ex));
  }
}

TEST_CASE("exact solver size limit") {
  std::mt19937 rng(5);
  const auto big = random_planar(rng, kExactLimit + 1);
  CHECK_THROWS_AS(gh_exact_small(big, big), CapabilityError);
}

TEST_CASE("JSON round trip") {
  std::mt19937 rng(9);
  const auto X = random_planar(rng, 5);
  const auto Y = FiniteMetricSpace::from_json(X.to_json());
  CHECK(distortion(X, Y, Correspondence::identity(5)) == 0.0);
  CHECK_THROWS_AS(FiniteMetricSpace::from_json(nlohmann::json{{"n", 3}, {"d", {1.0}}}), ContractError);
}
