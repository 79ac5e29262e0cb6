// Laplace-in-time transforms in the e^{tau T}-scaled convention, the boundary
// indicator and the energy decomposition of the indicator.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enclosure/geometry.hpp"
#include "enclosure/heat.hpp"

namespace enclosure {

// \int_0^T e^{tau (T - t)} series(t) dt by the trapezoid rule. RangeError if a
// nonzero sample sits where tau (T - t) > 700.
double laplace_scaled(std::span<const double> t_grid, std::span<const double> series, double tau,
                      double T);

struct WStar {
  double value = 0.0;              // e^{tau T} w^*
  double normal_derivative = 0.0;  // e^{tau T} d_nu w^*
};

// Time quadrature of the scaled wave and of the flux on the given time grid.
WStar w_star_scaled_eval(const Vec3& x, const Vec3& normal, double tau, double T,
                         const ProbeBall& probe, std::span<const double> t_grid);

// Gauss-Legendre evaluation in wave time, radial: value and d/dr at distance r from p.
WStar w_star_scaled_exact(double r, double tau, double T, double eta);

enum class IndicatorRoute { trace, residual };

std::string to_string(IndicatorRoute route);
IndicatorRoute parse_route(const std::string& name);

struct IndicatorSample {
  double tau = 0.0;
  double I_scaled = 0.0;      // e^{2 tau T} I, from the selected route
  double log_I_scaled = 0.0;  // NaN unless I_scaled > 0
  bool positive = false;
  double I_trace = 0.0;       // literal boundary-trace route, always reported
  double I_residual = 0.0;    // residual-field route
  IndicatorRoute route = IndicatorRoute::residual;
  std::optional<double> J, E, Rh, residual;
  double wall_time = 0.0;
};

// e^{tau T}(w_f - w^*) on the run's radial grid, from the Laplace-transformed
// heat equation: (Delta - tau) R = F - F_0, d_r R = 0 on the outer sphere and
// d_r R = -d_r w^* on the cavity.
std::vector<double> residual_profile(const HeatRun& run, double tau, double T,
                                     const ProbeBall& probe);

IndicatorSample indicator(const HeatRun& run, double tau, double T, const ProbeBall& probe,
                          const BodySpec& body, IndicatorRoute route = IndicatorRoute::residual);

struct Decomposition {
  double I_scaled = 0.0;
  double J = 0.0;
  double E = 0.0;
  double Rh = 0.0;
  double residual = 0.0;  // I_scaled - (J + E + Rh)
};

// All terms in the e^{2 tau T}-scaled convention. The trace route needs the
// per-node transforms of the run (HeatOptions::laplace_tau).
Decomposition decomposition_diagnostics(const HeatRun& run, double tau, double T,
                                        const ProbeBall& probe, const BodySpec& body,
                                        IndicatorRoute route = IndicatorRoute::trace);

// Lat-long quadrature of a function over a sphere; exact for radial integrands.
double sphere_integral(const std::function<double(const Vec3&)>& f, const Vec3& center,
                       double radius, int n_theta = 32);

}  // namespace enclosure
