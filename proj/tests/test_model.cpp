#include <doctest.h>

#include <cmath>

#include "shrinker/errors.hpp"
#include "shrinker/model.hpp"

using namespace shrinker;

TEST_CASE("catalog models satisfy the soliton identities") {
  for (int m : {3, 4, 5, 6}) {
    for (const auto& name : catalog_names()) {
      const auto r = verify_model(make_model(name, m));
      CHECK_MESSAGE(r.pass, name << " m=" << m);
    }
  }
  const auto g = verify_model(make_gaussian(4));
  CHECK(g.soliton == 0.0);
  CHECK(g.normalization == 0.0);
}

TEST_CASE("catalog closed forms") {
  const auto c = make_cylinder(4);
  CHECK(c.potential.value(0.0) == doctest::Approx(1.5));
  CHECK(c.profile.phi(3.0) == doctest::Approx(2.0));
  CHECK(make_cylinder(5).potential.value(0.0) == doctest::Approx(2.0));
  const auto s = make_sphere(4);
  CHECK(s.potential.value(1.0) == doctest::Approx(2.0));
  CHECK(s.profile.hi() == doctest::Approx(M_PI * std::sqrt(6.0)));
  CHECK_THROWS_AS(make_model("banana", 4), ContractError);
  CHECK_THROWS_AS(make_gaussian(2), DimensionError);
}

TEST_CASE("perturbed sphere radius breaks the soliton equation") {
  const auto r = verify_model(make_sphere_with_radius(4, std::sqrt(6.0) * 1.01));
  // Rc - g/2 = (3 / (6 * 1.01^2) - 1/2) g
  CHECK(r.soliton == doctest::Approx(0.5 * (1.0 - 1.0 / (1.01 * 1.01))).epsilon(1e-9));
  CHECK(r.normalization == doctest::Approx(2.0 - 2.0 / (1.01 * 1.01)).epsilon(1e-9));
  CHECK_FALSE(r.pass);
}

TEST_CASE("rescaling breaks the shrinker normalization") {
  for (const auto& name : catalog_names()) {
    for (double lambda : {0.9, 1.1}) {
      const auto r = verify_model(scaled_model(make_model(name, 4), lambda));
      CHECK(std::max(r.soliton, r.normalization) > 1e-4);
    }
  }
}

TEST_CASE("quadratic growth bounds") {
  const auto g = f_growth_check(make_gaussian(4), {10.0});
  CHECK(g[0].f == doctest::Approx(25.0));
  CHECK(g[0].upper == doctest::Approx(std::pow(10.0 + std::sqrt(8.0), 2) / 4));
  CHECK(g[0].ok);
  const auto c = f_growth_check(make_cylinder(4), {30.0});
  CHECK(c[0].f == doctest::Approx(226.5));
  CHECK(c[0].lower == doctest::Approx(25.0));
  CHECK(c[0].upper == doctest::Approx(269.4264068711929));
  CHECK(c[0].ok);
  const auto s = make_sphere(4);
  CHECK(f_growth_check(s, {s.profile.hi()})[0].ok);
}

TEST_CASE("weighted volume ratio against closed forms") {
  // int_0^r e^{-t^2/4} t^3 dt = 8 (1 - e^{-u} (1 + u)), u = r^2/4
  auto w = [](double r) { return 8.0 * (1.0 - std::exp(-r * r / 4) * (1.0 + r * r / 4)); };
  const auto a = weighted_ratio_check(make_gaussian(4), 1.0, 0.5);
  CHECK(a.ratio == doctest::Approx(w(1.0) / w(0.5)).epsilon(1e-9));
  CHECK(a.bound == doctest::Approx(16.0));
  CHECK(a.ok);
  const auto b = weighted_ratio_check(make_gaussian(4), 2.0, 0.5);
  CHECK(b.ratio == doctest::Approx(141.0323386686502).epsilon(1e-9));
  CHECK(b.ok);
  for (double q : {2.0, 4.0}) CHECK(weighted_ratio_check(make_cylinder(5), 0.5 * q, 0.5).ok);
}

TEST_CASE("self-similar flow identity") {
  for (const auto& name : catalog_names()) {
    for (double t : {-2.0, -1.0, -0.5, 0.0, 0.5}) {
      const auto st = flow_identity_check(make_model(name, 4), t);
      CHECK_MESSAGE(st.identity_residual < 1e-5, name << " t=" << t);
      if (t >= -2.0 && t <= 0.0) CHECK(st.dtf_excess <= 1e-8);
    }
  }
  const auto cyl = flow_identity_check(make_cylinder(4), -1.0);
  for (double R : cyl.scalar) CHECK(R == doctest::Approx(0.75).epsilon(1e-4));
  const auto id = flow_identity_check(make_gaussian(4), 0.0);
  for (std::size_t i = 0; i < id.x.size(); ++i) CHECK(id.S[i] == doctest::Approx(id.x[i]));
}

TEST_CASE("model JSON round trip") {
  for (const auto& name : catalog_names()) {
    const auto model = make_model(name, 5);
    const auto back = model_from_json(model_to_json(model));
    CHECK(back.name == model.name);
    CHECK(back.dimension() == 5);
    CHECK(back.profile.phi(1.0) == doctest::Approx(model.profile.phi(1.0)));
    CHECK(back.potential.value(1.0) == doctest::Approx(model.potential.value(1.0)));
    CHECK(verify_model(back).pass);
  }
}
