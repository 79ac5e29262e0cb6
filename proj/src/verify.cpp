#include "enclosure/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "enclosure/config.hpp"
#include "enclosure/errors.hpp"
#include "enclosure/forms.hpp"
#include "enclosure/heat.hpp"
#include "enclosure/quadrature.hpp"
#include "enclosure/wave.hpp"

namespace enclosure {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<Prop31Row> prop31_table() {
  const double points[5][4] = {
      {2.0, 1.5, 0.5, 0.3}, {1.0, 2.0, 0.5, 0.5}, {3.0, 1.2, 0.4, 0.2},
      {2.5, 3.0, 1.0, 1.0}, {1.5, 1.0, 0.3, 0.0}};
  const Vec3 dir = Vec3{1.0, 2.0, 2.0} * (1.0 / 3.0);
  const ProbeBall base{{0.1, -0.2, 0.3}, 0.0};
  std::vector<Prop31Row> rows;
  for (const auto& q : points) {
    const ProbeBall probe{base.p, q[2]};
    const Vec3 x = probe.p + dir * q[3];
    Prop31Row row{q[3], q[0], q[1], q[2]};
    row.lhs = prop31_lhs(x, q[0], q[1], probe).value;
    row.rhs = prop31_rhs(x, q[0], q[1], q[2], probe.p);
    row.rel_err = std::abs(row.lhs - row.rhs) / std::abs(row.rhs);
    rows.push_back(row);
  }
  return rows;
}

CheckRow verify_prop31(double tol) {
  const auto t0 = Clock::now();
  CheckRow row{"prop31", "Yukawa identity at 5 points", 0.0, tol};
  for (const Prop31Row& r : prop31_table()) row.max_error = std::max(row.max_error, r.rel_err);
  row.pass = row.max_error <= tol;
  row.seconds = seconds_since(t0);
  return row;
}

CheckRow verify_forms(double tol) {
  const auto t0 = Clock::now();
  CheckRow row{"forms", "H_+ + H_- vs closed sum, 75 points", 0.0, tol};
  const double tau_hats[] = {0.5, 1.5, 3.0, 5.0, 8.0};
  const double T_hats[] = {0.5, 1.2, 2.0, 3.5, 6.0};
  const double etas[] = {0.25, 0.5, 1.0};
  int count = 0;
  for (double tau_hat : tau_hats)
    for (double T_hat : T_hats)
      for (double eta : etas) {
        const HCoefficients c{tau_hat, T_hat, eta};
        const double closed = H_sum(c);
        row.max_error = std::max(row.max_error, std::abs(H_sum_polynomial(c) - closed) / std::abs(closed));
        ++count;
      }
  row.detail = "H_+ + H_- vs closed sum, " + std::to_string(count) + " points";
  row.pass = row.max_error <= tol;
  row.seconds = seconds_since(t0);
  return row;
}

CheckRow verify_kirchhoff(int grid, int n_quad, double tol) {
  const auto t0 = Clock::now();
  const ProbeBall probe{{0.0, 0.0, 0.0}, 0.5};
  const Vec3 dir = Vec3{2.0, -1.0, 2.0} * (1.0 / 3.0);
  CheckRow row{"kirchhoff", "", 0.0, tol};
  bool support_exact = true;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double d = 0.02 + 1.5 * i / (grid - 1);
      const double s = 0.01 + 1.5 * j / (grid - 1);
      const Vec3 x = probe.p + dir * d;
      const double v = kirchhoff_eval(x, s, probe).v;
      const double o = kirchhoff_oracle(x, s, probe, n_quad);
      const bool inside = std::abs(d - s) < probe.eta;
      if (!inside) {
        support_exact = support_exact && v == 0.0 && o == 0.0;
      } else if (v != 0.0) {
        row.max_error = std::max(row.max_error, std::abs(v - o) / std::abs(v));
      }
    }
  row.detail = std::to_string(grid) + "x" + std::to_string(grid) + " (d,s) grid, n_quad " +
               std::to_string(n_quad) + (support_exact ? ", support exact" : ", SUPPORT NOT EXACT");
  row.pass = support_exact && row.max_error <= tol;
  row.seconds = seconds_since(t0);
  return row;
}

std::vector<DecompositionLevel> decomposition_study(double tau,
                                                    const std::vector<std::pair<int, int>>& levels) {
  const RunConfig ref = reference_config();
  std::vector<DecompositionLevel> out;
  for (const auto& [n_r, window_steps] : levels) {
    Discretization disc = ref.disc;
    disc.n_r = n_r;
    disc.window_steps = window_steps;
    HeatOptions options;
    options.laplace_tau = tau;
    const HeatRun run = solve_radial_heat(ref.body, ref.probe, disc, tau, options);
    DecompositionLevel level;
    level.n_r = n_r;
    level.window_steps = window_steps;
    level.terms = decomposition_diagnostics(run, tau, disc.T, ref.probe, ref.body, IndicatorRoute::trace);
    level.relative_residual = std::abs(level.terms.residual) / std::abs(level.terms.I_scaled);
    out.push_back(level);
  }
  return out;
}

CheckRow verify_decomposition(double tol) {
  const auto t0 = Clock::now();
  const auto levels = decomposition_study(50.0, {{1000, 1600}, {2000, 6400}});
  CheckRow row{"decomposition", "", levels.back().relative_residual, tol};
  const bool improving = levels.back().relative_residual < levels.front().relative_residual;
  char buf[160];
  std::snprintf(buf, sizeof buf, "tau 50, I = J + E + R_h; coarse %.3e -> fine %.3e%s",
                levels.front().relative_residual, levels.back().relative_residual,
                improving ? "" : " (NOT IMPROVING)");
  row.detail = buf;
  row.pass = improving && row.max_error <= tol;
  row.seconds = seconds_since(t0);
  return row;
}

namespace {

// u = e^{-t}(2 + cos(pi r)) + t r^2
double mms_u(double r, double t) {
  return std::exp(-t) * (2.0 + std::cos(std::numbers::pi * r)) + t * r * r;
}

double mms_ur(double r, double t) {
  return -std::numbers::pi * std::exp(-t) * std::sin(std::numbers::pi * r) + 2.0 * t * r;
}

double mms_source(double r, double t) {
  const double pi = std::numbers::pi;
  const double ut = -std::exp(-t) * (2.0 + std::cos(pi * r)) + r * r;
  const double urr = -pi * pi * std::exp(-t) * std::cos(pi * r) + 2.0 * t;
  return ut - (urr + 2.0 * mms_ur(r, t) / r);
}

}  // namespace

MmsStudy mms_study(const std::vector<int>& n_r_levels) {
  constexpr double r0 = 0.4;
  constexpr double R = 1.0;
  constexpr double T = 0.5;
  constexpr double four_pi = 4.0 * std::numbers::pi;
  MmsStudy study;
  for (int n_r : n_r_levels) {
    const int n_t = n_r;  // dt = T/n_t tied to h
    HeatProblem problem;
    problem.r_inner = r0;
    problem.r_outer = R;
    problem.t_grid.resize(static_cast<std::size_t>(n_t) + 1);
    for (int k = 0; k <= n_t; ++k) problem.t_grid[static_cast<std::size_t>(k)] = T * k / n_t;
    problem.outer_flux = [](double t) { return mms_ur(R, t); };
    problem.inner_flux = [](double t) { return mms_ur(r0, t); };
    problem.source = mms_source;
    problem.initial = [](double r) { return mms_u(r, 0.0); };
    HeatOptions options;
    options.store_field = true;
    const HeatRun run = solve_heat(problem, n_r, options);

    const std::size_t n = run.n_r();
    std::vector<double> err_t(run.n_t()), sq(n), boundary(run.n_t()), source_t(run.n_t()), src(n);
    for (std::size_t k = 0; k < run.n_t(); ++k) {
      const double t = run.t_grid[k];
      for (std::size_t j = 0; j < n; ++j) {
        const double r = run.r_grid[j];
        const double e = run.field[k * n + j] - mms_u(r, t);
        sq[j] = four_pi * r * r * e * e;
        src[j] = four_pi * r * r * mms_source(r, t);
      }
      err_t[k] = trapezoid(run.r_grid, sq);
      source_t[k] = trapezoid(run.r_grid, src);
      boundary[k] = four_pi * (R * R * mms_ur(R, t) - r0 * r0 * mms_ur(r0, t));
    }
    // Heat balance: d/dt \int u = boundary flux + \int source, integrated by the trapezoid rule in time.
    const double supplied = trapezoid(run.t_grid, boundary) + trapezoid(run.t_grid, source_t);
    const double change = run.heat_content.back() - run.heat_content.front();
    MmsLevel level;
    level.n_r = n_r;
    level.dt = run.dt;
    level.error = std::sqrt(trapezoid(run.t_grid, err_t));
    level.conservation = std::abs(change - supplied) / std::abs(run.heat_content.back());
    study.levels.push_back(level);
  }
  if (study.levels.size() >= 2) {
    const MmsLevel& a = study.levels[study.levels.size() - 2];
    const MmsLevel& b = study.levels.back();
    study.order = std::log(a.error / b.error) / std::log(static_cast<double>(b.n_r) / a.n_r);
  }
  return study;
}

std::vector<CheckRow> run_verifications(const std::string& selector) {
  static const std::vector<std::string> known{"prop31", "kirchhoff", "forms", "decomposition", "all"};
  if (std::find(known.begin(), known.end(), selector) == known.end())
    throw ConfigError("unknown verification suite '" + selector +
                      "' (expected prop31, kirchhoff, forms, decomposition or all)");
  const bool all = selector == "all";
  std::vector<CheckRow> rows;
  if (all || selector == "prop31") rows.push_back(verify_prop31());
  if (all || selector == "forms") rows.push_back(verify_forms());
  if (all || selector == "kirchhoff") rows.push_back(verify_kirchhoff());
  if (all || selector == "decomposition") rows.push_back(verify_decomposition());
  return rows;
}

std::string format_table(const std::vector<CheckRow>& rows) {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-14s %-6s %-12s %-10s %-8s %s\n", "suite", "result", "max_err",
                "tol", "seconds", "detail");
  out += buf;
  for (const CheckRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-14s %-6s %-12.3e %-10.1e %-8.2f %s\n", r.suite.c_str(),
                  r.pass ? "PASS" : "FAIL", r.max_error, r.tolerance, r.seconds, r.detail.c_str());
    out += buf;
  }
  return out;
}

}  // namespace enclosure
