#include "enclosure/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "enclosure/errors.hpp"
#include "enclosure/quadrature.hpp"
#include "enclosure/wave.hpp"

namespace enclosure {

namespace {

constexpr double kMinPivot = 1e-14;
constexpr double kMaxExponent = 700.0;

// Factored constant tridiagonal matrix for repeated solves.
class TridiagonalLU {
 public:
  TridiagonalLU(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper)
      : lower_(std::move(lower)), upper_(std::move(upper)), inv_(diag.size()), c_(diag.size()) {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
      double pivot = diag[i];
      if (i > 0) pivot -= lower_[i] * c_[i - 1];
      if (std::abs(pivot) < kMinPivot)
        throw NumericError("tridiagonal solve: pivot below 1e-14 at row " + std::to_string(i));
      inv_[i] = 1.0 / pivot;
      c_[i] = i + 1 < n ? upper_[i] * inv_[i] : 0.0;
    }
  }

  void solve(std::vector<double>& rhs) const {
    const std::size_t n = rhs.size();
    rhs[0] *= inv_[0];
    for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_[i];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_[i] * rhs[i + 1];
  }

 private:
  std::vector<double> lower_;  // lower_[i] couples row i to i-1
  std::vector<double> upper_;  // upper_[i] couples row i to i+1
  std::vector<double> inv_;
  std::vector<double> c_;
};

// u = U/r, with the r = 0 value taken from the one-sided slope of U.
void to_temperature(const std::vector<double>& U, const std::vector<double>& r,
                    std::vector<double>& u) {
  const std::size_t n = U.size();
  for (std::size_t j = 0; j < n; ++j) u[j] = r[j] > 0.0 ? U[j] / r[j] : 0.0;
  if (r[0] == 0.0) u[0] = (4.0 * U[1] - U[2]) / (2.0 * (r[1] - r[0]));
}

double volume_integral(const std::vector<double>& r, const std::vector<double>& values) {
  std::vector<double> weighted(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) weighted[j] = 4.0 * std::numbers::pi * r[j] * r[j] * values[j];
  return trapezoid(r, weighted);
}

}  // namespace

void solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                       std::vector<double> upper, std::vector<double>& rhs) {
  TridiagonalLU lu(std::move(lower), std::move(diag), std::move(upper));
  lu.solve(rhs);
}

double flux_onset(double tau, double T, double R_omega, double eta) {
  return std::max(0.0, T - (R_omega + eta) / std::sqrt(tau));
}

std::vector<double> heat_time_grid(const Discretization& disc, double tau, double eta) {
  const double window_dt = (2.0 * eta / std::sqrt(tau)) / disc.window_steps;
  const double dt = std::min(disc.T / disc.n_t, window_dt);
  const auto steps = static_cast<std::size_t>(std::ceil(disc.T / dt - 1e-9));
  std::vector<double> t(steps + 1);
  for (std::size_t n = 0; n <= steps; ++n) t[n] = disc.T * static_cast<double>(n) / steps;
  return t;
}

HeatRun solve_heat(const HeatProblem& problem, int n_r, const HeatOptions& options) {
  if (n_r < 2) throw ConfigError("solve_heat: need at least two radial cells");
  if (problem.t_grid.size() < 2) throw ConfigError("solve_heat: time grid too short");
  if (!problem.outer_flux) throw ConfigError("solve_heat: missing outer flux");
  const std::size_t n = static_cast<std::size_t>(n_r) + 1;
  const double r0 = problem.r_inner;
  const double R = problem.r_outer;
  const bool full_ball = r0 == 0.0;
  const double h = (R - r0) / n_r;

  HeatRun run;
  run.t_grid = problem.t_grid;
  run.T = problem.t_grid.back();
  run.tau = options.laplace_tau;
  run.dt = problem.t_grid[1] - problem.t_grid[0];
  run.r_grid.resize(n);
  for (std::size_t j = 0; j < n; ++j) run.r_grid[j] = r0 + h * static_cast<double>(j);
  run.r_grid.back() = R;
  const std::vector<double>& r = run.r_grid;
  const double dt = run.dt;
  const std::size_t n_t = problem.t_grid.size();

  // Spatial operator A for U: second difference with ghost-node Robin rows.
  std::vector<double> a_lo(n, 1.0 / (h * h)), a_d(n, -2.0 / (h * h)), a_up(n, 1.0 / (h * h));
  if (full_ball) {
    a_d[0] = 0.0;
    a_up[0] = 0.0;
  } else {
    a_up[0] = 2.0 / (h * h);
    a_d[0] -= 2.0 / (h * r0);
  }
  a_lo[n - 1] = 2.0 / (h * h);
  a_d[n - 1] += 2.0 / (h * R);

  std::vector<double> m_lo(n), m_d(n), m_up(n);
  for (std::size_t j = 0; j < n; ++j) {
    m_lo[j] = -0.5 * dt * a_lo[j];
    m_d[j] = 1.0 - 0.5 * dt * a_d[j];
    m_up[j] = -0.5 * dt * a_up[j];
  }
  if (full_ball) {
    m_d[0] = 1.0;
    m_up[0] = 0.0;
  }
  const TridiagonalLU lu(m_lo, m_d, m_up);

  // Boundary and source forcing b(t) for the U equation.
  const auto forcing = [&](double t, std::vector<double>& b) {
    std::fill(b.begin(), b.end(), 0.0);
    b[n - 1] += 2.0 * R * problem.outer_flux(t) / h;
    if (!full_ball && problem.inner_flux) b[0] -= 2.0 * r0 * problem.inner_flux(t) / h;
    if (problem.source)
      for (std::size_t j = full_ball ? 1 : 0; j < n; ++j) b[j] += r[j] * problem.source(r[j], t);
    if (full_ball) b[0] = 0.0;
  };

  std::vector<double> U(n, 0.0), u(n, 0.0), b_old(n), b_new(n), rhs(n);
  if (problem.initial)
    for (std::size_t j = 0; j < n; ++j) U[j] = r[j] * problem.initial(r[j]);
  to_temperature(U, r, u);

  run.boundary_trace.assign(n_t, 0.0);
  run.flux.assign(n_t, 0.0);
  run.heat_content.assign(n_t, 0.0);
  if (options.store_field) run.field.assign(n_t * n, 0.0);
  const bool accumulate = options.laplace_tau > 0.0;
  if (accumulate) run.laplace_nodes.assign(n, 0.0);

  std::vector<double> sq(n);
  std::vector<double> l2_slices(n_t, 0.0);
  bool found_nonzero = false;
  run.first_nonzero = n_t;

  const auto record = [&](std::size_t k) {
    run.boundary_trace[k] = u[n - 1];
    if (options.store_field) std::copy(u.begin(), u.end(), run.field.begin() + k * n);
    const bool nonzero = std::any_of(u.begin(), u.end(), [](double x) { return x != 0.0; });
    if (!nonzero) return;
    if (!found_nonzero) {
      found_nonzero = true;
      run.first_nonzero = k;
      if (accumulate && options.laplace_tau * (run.T - problem.t_grid[k]) > kMaxExponent)
        throw RangeError("laplace weights overflow: tau*(T - t_first_nonzero) = " +
                         std::to_string(options.laplace_tau * (run.T - problem.t_grid[k])) +
                         " > 700 at tau = " + std::to_string(options.laplace_tau));
    }
    run.heat_content[k] = volume_integral(r, u);
    for (std::size_t j = 0; j < n; ++j) sq[j] = u[j] * u[j];
    l2_slices[k] = volume_integral(r, sq);
    if (accumulate) {
      const double w = (k == 0 || k + 1 == n_t ? 0.5 : 1.0) * dt *
                       std::exp(options.laplace_tau * (run.T - problem.t_grid[k]));
      for (std::size_t j = 0; j < n; ++j) run.laplace_nodes[j] += w * u[j];
    }
  };

  run.flux[0] = problem.outer_flux(problem.t_grid[0]);
  record(0);
  forcing(problem.t_grid[0], b_old);
  bool state_zero = !found_nonzero;
  for (std::size_t k = 0; k + 1 < n_t; ++k) {
    const double t1 = problem.t_grid[k + 1];
    forcing(t1, b_new);
    run.flux[k + 1] = problem.outer_flux(t1);
    const bool data_zero = std::all_of(b_old.begin(), b_old.end(), [](double x) { return x == 0.0; }) &&
                           std::all_of(b_new.begin(), b_new.end(), [](double x) { return x == 0.0; });
    if (!(state_zero && data_zero)) {
      for (std::size_t j = 0; j < n; ++j) {
        double au = a_d[j] * U[j];
        if (j > 0) au += a_lo[j] * U[j - 1];
        if (j + 1 < n) au += a_up[j] * U[j + 1];
        rhs[j] = U[j] + 0.5 * dt * au + 0.5 * dt * (b_old[j] + b_new[j]);
      }
      if (full_ball) rhs[0] = 0.0;
      lu.solve(rhs);
      U.swap(rhs);
      to_temperature(U, r, u);
      state_zero = false;
    }
    record(k + 1);
    b_old.swap(b_new);
  }

  run.final_slice = u;
  run.l2_space_time = std::sqrt(trapezoid(problem.t_grid, l2_slices));
  run.l2_final = std::sqrt(l2_slices.back());
  return run;
}

namespace {

HeatProblem wave_problem(double r_inner, const BodySpec& body, const ProbeBall& probe,
                         const Discretization& disc, double tau) {
  validate(probe);
  validate(disc);
  validate_radial(probe, body);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  HeatProblem problem;
  problem.r_inner = r_inner;
  problem.r_outer = body.R_omega;
  problem.t_grid = heat_time_grid(disc, tau, probe.eta);
  const double T = disc.T;
  const double R = body.R_omega;
  const double eta = probe.eta;
  problem.outer_flux = [=](double t) { return flux_trace_radial(R, t, T, tau, eta); };

  const double onset = flux_onset(tau, T, R, eta);
  const double dt = problem.t_grid[1] - problem.t_grid[0];
  const double inside = (T - onset) / dt;
  if (inside < 20.0) {
    const auto required = static_cast<long>(std::ceil(20.0 * T / (T - onset)));
    throw ConfigError("time grid resolves the flux window with only " +
                      std::to_string(static_cast<long>(inside)) +
                      " steps; need n_t >= " + std::to_string(required));
  }
  return problem;
}

}  // namespace

HeatRun solve_radial_heat(const BodySpec& body, const ProbeBall& probe, const Discretization& disc,
                          double tau, const HeatOptions& options) {
  validate(body);
  HeatRun run = solve_heat(wave_problem(body.R_cavity, body, probe, disc, tau), disc.n_r, options);
  run.tau = tau;
  return run;
}

HeatRun solve_radial_heat_no_cavity(const BodySpec& body, const ProbeBall& probe,
                                    const Discretization& disc, double tau,
                                    const HeatOptions& options) {
  HeatRun run = solve_heat(wave_problem(0.0, body, probe, disc, tau), disc.n_r, options);
  run.tau = tau;
  return run;
}

}  // namespace enclosure
