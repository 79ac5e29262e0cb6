#include "enclosure/transform.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "enclosure/errors.hpp"
#include "enclosure/quadrature.hpp"
#include "enclosure/wave.hpp"

namespace enclosure {

namespace {

constexpr double kMaxExponent = 700.0;
constexpr double kFourPi = 4.0 * std::numbers::pi;

// Second-order first derivative on a uniform grid.
std::vector<double> gradient(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> g(n);
  for (std::size_t j = 1; j + 1 < n; ++j) g[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
  g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return g;
}

double shell_integral(const std::vector<double>& r, const std::vector<double>& values) {
  std::vector<double> w(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) w[j] = kFourPi * r[j] * r[j] * values[j];
  return trapezoid(r, w);
}

}  // namespace

std::string to_string(IndicatorRoute route) {
  return route == IndicatorRoute::trace ? "trace" : "residual";
}

IndicatorRoute parse_route(const std::string& name) {
  if (name == "trace") return IndicatorRoute::trace;
  if (name == "residual") return IndicatorRoute::residual;
  throw ConfigError("unknown indicator route '" + name + "' (expected trace or residual)");
}

double laplace_scaled(std::span<const double> t_grid, std::span<const double> series, double tau,
                      double T) {
  if (t_grid.size() != series.size()) throw ConfigError("laplace_scaled: size mismatch");
  double total = 0.0;
  bool checked = false;
  for (std::size_t k = 0; k + 1 < t_grid.size(); ++k) {
    const double a = series[k];
    const double b = series[k + 1];
    if (a == 0.0 && b == 0.0) continue;
    if (!checked) {
      const double t0 = a != 0.0 ? t_grid[k] : t_grid[k + 1];
      if (tau * (T - t0) > kMaxExponent)
        throw RangeError("laplace_scaled: tau*(T - t) = " + std::to_string(tau * (T - t0)) +
                         " exceeds 700; admissible tau <= " +
                         std::to_string(kMaxExponent / (T - t0)));
      checked = true;
    }
    total += 0.5 * (t_grid[k + 1] - t_grid[k]) *
             (std::exp(tau * (T - t_grid[k])) * a + std::exp(tau * (T - t_grid[k + 1])) * b);
  }
  return total;
}

WStar w_star_scaled_eval(const Vec3& x, const Vec3& normal, double tau, double T,
                         const ProbeBall& probe, std::span<const double> t_grid) {
  std::vector<double> v(t_grid.size()), f(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    v[k] = scaled_wave(x, T - t_grid[k], tau, probe).v_tau;
    f[k] = flux_trace(x, normal, t_grid[k], T, tau, probe);
  }
  return {laplace_scaled(t_grid, v, tau, T), laplace_scaled(t_grid, f, tau, T)};
}

WStar w_star_scaled_exact(double r, double tau, double T, double eta) {
  // e^{tau T} w^* = (1/tau) \int_0^{sqrt(tau) T} e^{sqrt(tau) s} v(r, s) ds.
  const double k = std::sqrt(tau);
  const double s_max = std::min(k * T, r + eta);
  if (s_max <= 0.0) return {};
  const std::array<double, 4> cuts{std::abs(r - eta), r, eta - r, r + eta};
  const auto value = [&](double s) { return std::exp(k * s) * kirchhoff_radial(r, s, eta).v; };
  const auto slope = [&](double s) { return std::exp(k * s) * kirchhoff_radial(r, s, eta).dv_dd; };
  const double lo = std::max(0.0, r - eta);
  return {integrate_gl_pieces(value, lo, s_max, cuts, 4, 24) / tau,
          integrate_gl_pieces(slope, lo, s_max, cuts, 4, 24) / tau};
}

std::vector<double> residual_profile(const HeatRun& run, double tau, double T,
                                     const ProbeBall& probe) {
  const std::vector<double>& r = run.r_grid;
  const std::size_t n = r.size();
  if (n < 3 || run.final_slice.size() != n) throw ConfigError("residual_profile: run has no final slice");
  const double h = r[1] - r[0];
  const double r0 = r.front();
  const double R = r.back();
  const bool full_ball = r0 == 0.0;

  // Q = r R satisfies Q'' - tau Q = r (F - F_0).
  std::vector<double> lo(n, 1.0 / (h * h)), d(n, -2.0 / (h * h) - tau), up(n, 1.0 / (h * h)), b(n);
  for (std::size_t j = 0; j < n; ++j)
    b[j] = r[j] * (run.final_slice[j] + psi_B_radial(r[j], probe.eta) / tau);
  if (full_ball) {
    d[0] = 1.0;
    up[0] = 0.0;
    b[0] = 0.0;
  } else {
    // Q'(r0) = Q/r0 + r0 R_r(r0) with R_r(r0) = -d_r w^*(r0).
    const double dw = w_star_scaled_exact(r0, tau, T, probe.eta).normal_derivative;
    up[0] = 2.0 / (h * h);
    d[0] -= 2.0 / (h * r0);
    b[0] -= 2.0 * r0 * dw / h;
  }
  lo[n - 1] = 2.0 / (h * h);
  d[n - 1] += 2.0 / (h * R);
  solve_tridiagonal(lo, d, up, b);

  std::vector<double> profile(n);
  for (std::size_t j = 0; j < n; ++j) profile[j] = r[j] > 0.0 ? b[j] / r[j] : 0.0;
  if (full_ball) profile[0] = (4.0 * b[1] - b[2]) / (2.0 * h);
  return profile;
}

IndicatorSample indicator(const HeatRun& run, double tau, double T, const ProbeBall& probe,
                          const BodySpec& body, IndicatorRoute route) {
  const double R = body.R_omega;
  const double area = kFourPi * R * R;
  IndicatorSample sample;
  sample.tau = tau;
  sample.route = route;

  std::vector<double> v_trace(run.n_t());
  for (std::size_t k = 0; k < run.n_t(); ++k)
    v_trace[k] = kirchhoff_radial(R, std::sqrt(tau) * (T - run.t_grid[k]), probe.eta).v / std::sqrt(tau);
  const double w_f = laplace_scaled(run.t_grid, run.boundary_trace, tau, T);
  const double w_star = laplace_scaled(run.t_grid, v_trace, tau, T);
  const double dnu_w_star = laplace_scaled(run.t_grid, run.flux, tau, T);
  sample.I_trace = area * (w_f - w_star) * dnu_w_star;

  const std::vector<double> profile = residual_profile(run, tau, T, probe);
  sample.I_residual = area * profile.back() * w_star_scaled_exact(R, tau, T, probe.eta).normal_derivative;

  sample.I_scaled = route == IndicatorRoute::trace ? sample.I_trace : sample.I_residual;
  sample.positive = sample.I_scaled > 0.0;
  sample.log_I_scaled =
      sample.positive ? std::log(sample.I_scaled) : std::numeric_limits<double>::quiet_NaN();
  return sample;
}

Decomposition decomposition_diagnostics(const HeatRun& run, double tau, double T,
                                        const ProbeBall& probe, const BodySpec& body,
                                        IndicatorRoute route) {
  const std::vector<double>& r = run.r_grid;
  const std::size_t n = r.size();
  const double h = r[1] - r[0];
  const double eta = probe.eta;
  const double R_D = body.R_cavity;

  std::vector<double> w_star(n), R(n);
  if (route == IndicatorRoute::trace) {
    if (run.laplace_nodes.size() != n)
      throw ConfigError("decomposition_diagnostics: run carries no volume transforms "
                        "(solve with HeatOptions::laplace_tau)");
    std::vector<double> v(run.n_t());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < run.n_t(); ++k)
        v[k] = kirchhoff_radial(r[j], std::sqrt(tau) * (T - run.t_grid[k]), eta).v / std::sqrt(tau);
      w_star[j] = laplace_scaled(run.t_grid, v, tau, T);
      R[j] = run.laplace_nodes[j] - w_star[j];
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) w_star[j] = w_star_scaled_exact(r[j], tau, T, eta).value;
    R = residual_profile(run, tau, T, probe);
  }

  Decomposition out;
  out.I_scaled = indicator(run, tau, T, probe, body, route).I_scaled;

  // Cavity terms by Gauss-Legendre on [0, R_D].
  const std::array<double, 1> cut{eta};
  out.J = integrate_gl_pieces(
      [&](double x) {
        const WStar w = w_star_scaled_exact(x, tau, T, eta);
        return kFourPi * x * x * (w.normal_derivative * w.normal_derivative + tau * w.value * w.value);
      },
      0.0, R_D, cut, 16, 16);
  const double cavity_source = integrate_gl_pieces(
      [&](double x) {
        return kFourPi * x * x * (-psi_B_radial(x, eta) / tau) * w_star_scaled_exact(x, tau, T, eta).value;
      },
      0.0, R_D, cut, 16, 16);

  const std::vector<double> dR = gradient(R, h);
  std::vector<double> energy(n), fr(n), mixed(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double F = run.final_slice[j];
    const double F0 = -psi_B_radial(r[j], eta) / tau;
    energy[j] = dR[j] * dR[j] + tau * R[j] * R[j];
    fr[j] = F * R[j];
    mixed[j] = (F0 - F) * w_star[j];
  }
  out.E = shell_integral(r, energy);
  out.Rh = cavity_source + shell_integral(r, fr) + shell_integral(r, mixed);
  out.residual = out.I_scaled - (out.J + out.E + out.Rh);
  return out;
}

double sphere_integral(const std::function<double(const Vec3&)>& f, const Vec3& center,
                       double radius, int n_theta) {
  const GaussRule& rule = gauss_legendre(static_cast<std::size_t>(n_theta));
  const int n_phi = 2 * n_theta;
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double c = rule.nodes[i];
    const double s = std::sqrt(1.0 - c * c);
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / n_phi;
      const Vec3 dir{s * std::cos(phi), s * std::sin(phi), c};
      total += rule.weights[i] * (2.0 * std::numbers::pi / n_phi) * f(center + dir * radius);
    }
  }
  return total * radius * radius;
}

}  // namespace enclosure
