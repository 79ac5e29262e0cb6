#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "enclosure/errors.hpp"
#include "enclosure/geometry.hpp"

using namespace enclosure;

TEST_CASE("radius_sup examples") {
  CHECK(radius_sup({0, 0, 0}, {0, 0, 0}, 0.4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(radius_sup({0, 0, 0}, {1, 0, 0}, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  for (double r : {0.01, 0.3, 2.0, 17.0}) CHECK(radius_sup({0, 0, 0}, {0, 0, 0}, r) == r);
  CHECK_THROWS_AS(radius_sup({0, 0, 0}, {0, 0, 0}, 0.0), ConfigError);
  CHECK_THROWS_AS(radius_sup({0, 0, 0}, {0, 0, 0}, -1.0), ConfigError);
}

TEST_CASE("radius_sup is translation invariant") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 p{u(gen), u(gen), u(gen)};
    const Vec3 c{u(gen), u(gen), u(gen)};
    const Vec3 a{u(gen), u(gen), u(gen)};
    const double r = 0.1 + std::abs(u(gen));
    CHECK(radius_sup(p + a, c + a, r) == doctest::Approx(radius_sup(p, c, r)).epsilon(1e-12));
  }
}

TEST_CASE("check_constraint examples") {
  CHECK(check_constraint(0.5, 0.4, 1.0));
  CHECK_FALSE(check_constraint(0.1, 0.4, 1.0));
  for (double R_D : {0.01, 0.2, 0.49}) CHECK(check_constraint(1.0, R_D, 1.0));
  CHECK_THROWS_AS(check_constraint(0.0, 0.4, 1.0), ConfigError);
  CHECK_THROWS_AS(check_constraint(0.5, -0.4, 1.0), ConfigError);
  CHECK_THROWS_AS(check_constraint(0.5, 0.4, 0.0), ConfigError);
}

TEST_CASE("check_constraint monotonicity") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double eta = u(gen), R_D = u(gen), R_O = u(gen), bump = u(gen);
    const bool base = check_constraint(eta, R_D, R_O);
    if (base) {
      CHECK(check_constraint(eta + bump, R_D, R_O));
      CHECK(check_constraint(eta, R_D + bump, R_O));
    }
    if (!base) CHECK_FALSE(check_constraint(eta, R_D, R_O + bump));
  }
}

TEST_CASE("validation of value types") {
  CHECK_THROWS_AS(validate(ProbeBall{{0, 0, 0}, 0.0}), ConfigError);
  CHECK_NOTHROW(validate(ProbeBall{{0, 0, 0}, 0.5}));
  CHECK_THROWS_AS(validate(BodySpec{1.0, 1.0, {}}), ConfigError);
  CHECK_THROWS_AS(validate(BodySpec{1.0, 0.0, {}}), ConfigError);
  CHECK_NOTHROW(validate(BodySpec{1.0, 0.4, {}}));
  CHECK_THROWS_AS(validate(Discretization{15, 100, 1.0, 40}), ConfigError);
  CHECK_THROWS_AS(validate(Discretization{100, 15, 1.0, 40}), ConfigError);
  CHECK_THROWS_AS(validate(Discretization{100, 100, 0.0, 40}), ConfigError);
  CHECK_NOTHROW(validate(Discretization{16, 16, 1.0, 40}));
}

TEST_CASE("radial mode needs the probe at the centre") {
  const BodySpec body{1.0, 0.4, {0.0, 0.0, 0.0}};
  CHECK_NOTHROW(validate_radial(ProbeBall{{0, 0, 0}, 0.5}, body));
  CHECK_THROWS_AS(validate_radial(ProbeBall{{0.1, 0, 0}, 0.5}, body), ConfigError);
}

TEST_CASE("safe eta satisfies the constraint for any cavity") {
  const ProbeBall probe{{0, 0, 0}, 0.1};
  for (double R_D : {0.01, 0.1, 0.4, 0.9}) {
    const BodySpec body{1.0, R_D, {}};
    const double eta = safe_eta(probe, body);
    CHECK(eta >= 1.0);
    CHECK(check_constraint(eta, R_D, 1.0));
  }
}
