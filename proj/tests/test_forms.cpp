#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "enclosure/errors.hpp"
#include "enclosure/forms.hpp"
#include "enclosure/quadrature.hpp"
#include "enclosure/verify.hpp"
#include "enclosure/wave.hpp"

using namespace enclosure;
using C = std::complex<double>;

TEST_CASE("sinh kernel") {
  CHECK(sinh_kernel({1, 2, 3}, {1, 2, 3}, 9.0) == 3.0);
  CHECK(sinh_kernel({1, 0, 0}, {0, 0, 0}, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(sinh_kernel_radial(1e-9, 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  // Both sides of the series switch agree.
  const double r = 1e-4 / 3.0;
  CHECK(sinh_kernel_radial(r * (1 - 1e-9), 9.0) ==
        doctest::Approx(sinh_kernel_radial(r * (1 + 1e-9), 9.0)).epsilon(1e-13));
  CHECK_THROWS_AS(sinh_kernel_radial(0.5, 0.0), DomainError);
}

TEST_CASE("cubic polynomials at their special points") {
  for (double T : {0.7, 1.5, 4.0}) {
    CHECK(g_tau_poly(T - 0.5, 1.0, T, 0.5) == doctest::Approx(-1.5).epsilon(1e-13));
    CHECK(f_tau_poly(T + 0.5, 2.0, T, 0.5) == doctest::Approx(0.75).epsilon(1e-13));
    for (double tau : {0.5, 3.0}) {
      const double eta = 0.4;
      CHECK(f_tau_poly(T, tau, T, eta) ==
            doctest::Approx(tau * eta * eta * eta / 12 - eta / tau + 2 / (tau * tau)).epsilon(1e-12));
      CHECK(g_tau_poly(T - eta, tau, T, eta) == doctest::Approx((eta - 2 / tau) / tau).epsilon(1e-12));
      CHECK(f_tau_poly(T + eta, tau, T, eta) == doctest::Approx((eta + 2 / tau) / tau).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed sum equals the four-term assembly") {
  const HCoefficients c{2.0, 1.5, 0.5};
  CHECK(H_sum_polynomial(c) == doctest::Approx(H_sum(c)).epsilon(1e-10));
  CHECK(H_plus(c) + H_minus(c) == H_sum_polynomial(c));
  const CheckRow grid = verify_forms();
  CHECK(grid.max_error <= 1e-10);
  CHECK(grid.detail.find("75 points") != std::string::npos);
}

TEST_CASE("scaled closed sum and small-eta limit") {
  for (double th : {0.5, 2.0, 6.0}) {
    const HCoefficients c{th, 1.3, 0.4};
    CHECK(H_sum_scaled(c) == doctest::Approx(std::exp(th * 1.3) * H_sum(c)).epsilon(1e-13));
  }
  // e^{tT} H = (4/t^2)(1 - cosh t eta) + (2 eta/t) sinh t eta = t^2 eta^4/6 + O(eta^6).
  CHECK(std::abs(H_sum_scaled({2.0, 1.5, 1e-6})) <= 1e-12);
  CHECK(H_sum_scaled({2.0, 1.5, 1e-2}) == doctest::Approx(4.0 * 1e-8 / 6.0).epsilon(1e-3));
}

TEST_CASE("rhs example value") {
  const double expected = 4 * std::exp(-2.0) - 2.5 * std::exp(-2.5) - 1.5 * std::exp(-1.5);
  CHECK(H_sum({1.0, 2.0, 0.5}) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(prop31_rhs({0, 0, 0}, 1.0, 2.0, 0.5, {0, 0, 0}) == doctest::Approx(expected * 1.0).epsilon(1e-14));
  CHECK(prop31_rhs({0, 0, 0}, 2.5, 2.0, 0.5, {0, 0, 0}) ==
        doctest::Approx(H_sum({2.5, 2.0, 0.5}) * 2.5).epsilon(1e-14));
}

TEST_CASE("g_even") {
  CHECK(g_even(C(1e-8, 0), 1.0).real() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(g_even(C(0, 0), 0.5).real() == doctest::Approx(0.125 / 12.0).epsilon(1e-15));
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const C z(u(gen), u(gen));
    const C a = g_even(z, 0.7), b = g_even(-z, 0.7);
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(a));
  }
  for (double tau : {0.5, 2.0, 7.0}) {
    const C g = g_even(C(0, tau), 0.5);
    CHECK(g.real() == doctest::Approx(g_imaginary(tau, 0.5)).epsilon(1e-10));
    CHECK(std::abs(g.imag()) <= 1e-12 * std::abs(g.real()));
  }
}

TEST_CASE("g_even series and direct form meet at the crossover") {
  for (double eta : {0.25, 0.5, 1.0, 2.0})
    for (int k = 0; k < 32; ++k) {
      const C z = std::polar(1e-2 / eta, 2.0 * std::numbers::pi * k / 32);
      const C s = g_even_series(z, eta);
      const double gap = std::abs(s - g_even_direct(z, eta));
      if (eta <= 0.5)
        CHECK(gap <= 1e-12);
      else
        CHECK(gap <= 1e-10 * std::abs(s));
    }
}

TEST_CASE("psi_hat") {
  const ProbeBall probe{{0.3, -0.2, 0.1}, 0.5};
  const double eta = probe.eta;
  CHECK(std::abs(psi_hat({0, 0, 0}, probe)) ==
        doctest::Approx(std::numbers::pi * std::pow(eta, 4) / 3).epsilon(1e-14));
  const double mass = integrate_gl([&](double r) { return 4 * std::numbers::pi * r * r * (eta - r); }, 0, eta);
  CHECK(psi_hat({0, 0, 0}, probe).real() == doctest::Approx(mass).epsilon(1e-13));
  const double m = std::abs(psi_hat({2.0, 0, 0}, probe));
  CHECK(std::abs(psi_hat({0, 2.0, 0}, probe)) == doctest::Approx(m).epsilon(1e-14));
  CHECK(std::abs(psi_hat({1.2, 1.6, 0}, probe)) == doctest::Approx(m).epsilon(1e-14));
  // Radial sinc quadrature at xi = (1, 0, 0); probe at the origin removes the phase.
  const ProbeBall centred{{0, 0, 0}, 0.5};
  const double k = 1.0;
  const double sinc = integrate_gl(
      [&](double r) { return 4 * std::numbers::pi * r * r * (eta - r) * std::sin(k * r) / (k * r); }, 0, eta, 4);
  CHECK(std::abs(psi_hat({1.0, 0, 0}, centred) - C(sinc, 0)) <= 1e-6);
}

TEST_CASE("w1 closed form") {
  const ProbeBall probe{{0, 0, 0}, 0.5};
  // Region: |x - p| < sqrt(tau) T - eta.
  CHECK_THROWS_AS(w1_star({2.6, 0, 0}, 4.0, 1.5, probe), DomainError);
  CHECK_THROWS_AS(w1_star({0.1, 0, 0}, 4e4, 1.0, probe), RangeError);
  CHECK(w1_star({1e-12, 0, 0}, 4.0, 1.5, probe) ==
        doctest::Approx(H_sum({2.0, 3.0, 0.5}) * 2.0 / 4.0).epsilon(1e-12));
  CHECK(w1_star_scaled({0.5, 0, 0}, 400.0, 1.0, probe) > 0.0);
  CHECK(w1_star_scaled({0.3, 0, 0}, 4.0, 1.5, probe) ==
        doctest::Approx(std::exp(6.0) * w1_star({0.3, 0, 0}, 4.0, 1.5, probe)).epsilon(1e-12));
  // Against the volume quadrature of the definition.
  const Vec3 x{0.3, 0, 0};
  const Prop31Result lhs = prop31_lhs(x, 2.0, 3.0, probe);
  CHECK(w1_star(x, 4.0, 1.5, probe) == doctest::Approx(lhs.value / 4.0).epsilon(1e-4));
}

TEST_CASE("Yukawa identity") {
  const ProbeBall probe{{0, 0, 0}, 0.5};
  const Vec3 x = Vec3{1, 2, 2} * (0.3 / 3.0);
  const Prop31Result r = prop31_lhs(x, 2.0, 1.5, probe);
  const double rhs = prop31_rhs(x, 2.0, 1.5, 0.5, probe.p);
  CHECK(r.converged);
  CHECK(std::abs(r.value - rhs) <= 1e-4 * std::abs(rhs));
  CHECK(r.dt_part == doctest::Approx(-r.tau_part).epsilon(1e-8));
  QuadSpec finer;
  finer.initial_panels = 4;
  const double doubled = prop31_lhs(x, 2.0, 1.5, probe, finer).value;
  CHECK(std::abs(doubled - r.value) <= 1e-6 * std::abs(r.value));
  for (const Prop31Row& row : prop31_table()) CHECK(row.rel_err <= 1e-4);
  CHECK(prop31_table().size() >= 5);
}

TEST_CASE("Yukawa integrand vanishes off the shell") {
  const ProbeBall probe{{0, 0, 0}, 0.5};
  const double T_hat = 1.5;
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  while (checked < 100) {
    const Vec3 y{u(gen), u(gen), u(gen)};
    const double d = norm(y);
    if (d > T_hat - probe.eta && d < T_hat + probe.eta) continue;
    const WaveSample w = kirchhoff_eval(y, T_hat, probe);
    CHECK(w.v == 0.0);
    CHECK(w.dv_ds == 0.0);
    ++checked;
  }
}

TEST_CASE("Yukawa preconditions") {
  const ProbeBall probe{{0, 0, 0}, 0.5};
  CHECK_THROWS_AS(prop31_lhs({0.1, 0, 0}, 2.0, 0.4, probe), DomainError);
  CHECK_THROWS_AS(prop31_lhs({1.2, 0, 0}, 2.0, 1.5, probe), DomainError);
}
