#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "enclosure/errors.hpp"
#include "enclosure/heat.hpp"
#include "enclosure/verify.hpp"

using namespace enclosure;

namespace {
const BodySpec kBody{1.0, 0.4, {0, 0, 0}};
const ProbeBall kProbe{{0, 0, 0}, 0.5};

std::vector<double> uniform_grid(double T, int n) {
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = T * k / n;
  return t;
}
}  // namespace

TEST_CASE("flux onset") {
  CHECK(flux_onset(400.0, 1.0, 1.0, 0.5) == doctest::Approx(0.925).epsilon(1e-15));
  CHECK(flux_onset(1.0, 1.0, 1.0, 0.5) == 0.0);
  CHECK(flux_onset(2.25, 1.0, 1.0, 0.5) == 0.0);
  double prev = 0.0;
  for (double tau : {10.0, 50.0, 100.0, 400.0, 1e4}) {
    const double t = flux_onset(tau, 1.0, 1.0, 0.5);
    CHECK(t >= prev);
    CHECK(t < 1.0);
    prev = t;
  }
}

TEST_CASE("time grid resolves the firing window") {
  const Discretization disc{100, 1000, 1.0, 40};
  const std::vector<double> t = heat_time_grid(disc, 400.0, 0.5);
  const double dt = t[1] - t[0];
  CHECK(dt <= (2 * 0.5 / 20.0) / 40 + 1e-15);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 1.0);
  const std::vector<double> coarse = heat_time_grid(Discretization{100, 1000, 1.0, 40}, 1.0, 0.5);
  CHECK(coarse.size() == 1001);
}

TEST_CASE("zero flux gives the zero solution") {
  HeatProblem problem;
  problem.t_grid = uniform_grid(1.0, 200);
  problem.outer_flux = [](double) { return 0.0; };
  HeatOptions options;
  options.store_field = true;
  const HeatRun run = solve_heat(problem, 64, options);
  CHECK(std::all_of(run.field.begin(), run.field.end(), [](double u) { return u == 0.0; }));
  CHECK(run.first_nonzero == run.n_t());
  CHECK(run.l2_space_time == 0.0);
}

TEST_CASE("temperature is exactly zero before the flux arrives") {
  const Discretization disc{200, 200, 1.0, 40};
  const double tau = 200.0;
  HeatOptions options;
  options.store_field = true;
  const HeatRun run = solve_radial_heat(kBody, kProbe, disc, tau, options);
  const double onset = flux_onset(tau, 1.0, kBody.R_omega, kProbe.eta);
  std::size_t checked = 0;
  for (std::size_t k = 0; k < run.n_t(); ++k) {
    if (run.t_grid[k] >= onset - run.dt) break;
    for (std::size_t j = 0; j < run.n_r(); ++j) CHECK(run.field[k * run.n_r() + j] == 0.0);
    ++checked;
  }
  CHECK(checked > 10);
  CHECK(run.t_grid[run.first_nonzero] >= onset - run.dt);
}

TEST_CASE("refusal when the firing window is under-resolved") {
  const Discretization disc{100, 100, 1.0, 5};
  try {
    solve_radial_heat(kBody, kProbe, disc, 400.0);
    FAIL("expected a refusal");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("n_t") != std::string::npos);
  }
}

TEST_CASE("tridiagonal solve") {
  std::vector<double> b{1.0, 2.0, 3.0};
  solve_tridiagonal({0.0, 1.0, 1.0}, {4.0, 4.0, 4.0}, {1.0, 1.0, 0.0}, b);
  // [[4,1,0],[1,4,1],[0,1,4]] x = (1,2,3)
  CHECK(4 * b[0] + b[1] == doctest::Approx(1.0));
  CHECK(b[0] + 4 * b[1] + b[2] == doctest::Approx(2.0));
  CHECK(b[1] + 4 * b[2] == doctest::Approx(3.0));
  std::vector<double> c{1.0, 1.0};
  CHECK_THROWS_AS(solve_tridiagonal({0.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}, c), NumericError);
}

TEST_CASE("manufactured solution converges at second order and conserves heat") {
  const MmsStudy study = mms_study({40, 80, 160});
  REQUIRE(study.levels.size() == 3);
  CHECK(study.order >= 1.9);
  const double first = std::log(study.levels[0].error / study.levels[1].error) / std::log(2.0);
  CHECK(first >= 1.9);
  CHECK(study.levels.back().conservation <= 1e-6);
}

TEST_CASE("heat balance for the wave-driven problem") {
  const Discretization disc{400, 400, 1.0, 80};
  const double tau = 100.0;
  const HeatRun run = solve_radial_heat(kBody, kProbe, disc, tau);
  std::vector<double> supplied(run.n_t());
  for (std::size_t k = 0; k < run.n_t(); ++k)
    supplied[k] = 4 * std::numbers::pi * kBody.R_omega * kBody.R_omega * run.flux[k];
  double in = 0.0;
  for (std::size_t k = 0; k + 1 < run.n_t(); ++k) in += 0.5 * run.dt * (supplied[k] + supplied[k + 1]);
  const double scale = *std::max_element(run.heat_content.begin(), run.heat_content.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
  CHECK(std::abs(run.heat_content.back() - in) <= 1e-9 * std::abs(scale));
}

TEST_CASE("refinement changes the boundary trace at second order") {
  const double tau = 100.0;
  const auto trace_at_T = [&](int n_r, int ws) {
    const HeatRun run = solve_radial_heat(kBody, kProbe, Discretization{n_r, 100, 1.0, ws}, tau);
    return run;
  };
  const HeatRun a = trace_at_T(100, 40), b = trace_at_T(200, 80), c = trace_at_T(400, 160);
  const auto max_diff = [](const HeatRun& coarse, const HeatRun& fine) {
    // fine has twice the time steps: compare on the coarse grid
    double m = 0.0;
    for (std::size_t k = 0; k < coarse.n_t(); ++k)
      m = std::max(m, std::abs(coarse.boundary_trace[k] - fine.boundary_trace[2 * k]));
    return m;
  };
  const double d1 = max_diff(a, b), d2 = max_diff(b, c);
  CHECK(d1 / d2 >= 3.0);
}

TEST_CASE("one-signed flux keeps the extremum on the outer sphere") {
  HeatProblem problem;
  problem.t_grid = uniform_grid(0.5, 200);
  problem.outer_flux = [](double t) { return std::sin(std::numbers::pi * t / 0.5); };
  HeatOptions options;
  options.store_field = true;
  const HeatRun run = solve_heat(problem, 100, options);
  const std::size_t n = run.n_r();
  for (std::size_t k = 1; k < run.n_t(); ++k) {
    const auto row = run.field.begin() + static_cast<std::ptrdiff_t>(k * n);
    const double mx = *std::max_element(row, row + static_cast<std::ptrdiff_t>(n));
    CHECK(*std::min_element(row, row + static_cast<std::ptrdiff_t>(n)) >= -1e-14);
    CHECK(mx == doctest::Approx(run.field[k * n + n - 1]));
  }
}

TEST_CASE("solution norms stay moderate across the sweep") {
  const Discretization disc{400, 400, 1.0, 80};
  std::vector<double> totals;
  for (double tau : {50.0, 75.0, 110.0, 160.0, 220.0, 290.0, 360.0, 400.0}) {
    const HeatRun run = solve_radial_heat(kBody, kProbe, disc, tau);
    totals.push_back(run.l2_space_time + run.l2_final);
  }
  std::vector<double> sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[3] + sorted[4]);
  CHECK(totals.back() <= 2.0 * median);
}

TEST_CASE("full ball reference solve") {
  const Discretization disc{400, 400, 1.0, 80};
  const HeatRun run = solve_radial_heat_no_cavity(kBody, kProbe, disc, 100.0);
  CHECK(run.r_grid.front() == 0.0);
  CHECK(std::isfinite(run.boundary_trace.back()));
  CHECK(run.boundary_trace.back() != 0.0);
}
