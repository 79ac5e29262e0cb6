// Crank-Nicolson solver for the spherically symmetric Neumann heat problem on
// r_inner <= r <= r_outer, written for U = r u so that U_t = U_rr.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "enclosure/geometry.hpp"

namespace enclosure {

// Problem data. Fluxes are u_r (radial derivative, not the outward normal
// derivative) at the respective sphere. r_inner == 0 solves on the full ball.
struct HeatProblem {
  double r_inner = 0.4;
  double r_outer = 1.0;
  std::vector<double> t_grid;                    // uniform, t_grid.front() == 0
  std::function<double(double)> outer_flux;      // u_r(r_outer, t)
  std::function<double(double)> inner_flux;      // u_r(r_inner, t); empty means insulated
  std::function<double(double, double)> source;  // volumetric (r, t), verification only
  std::function<double(double)> initial;         // u(r, 0); empty means zero
};

struct HeatOptions {
  bool store_field = false;
  // When positive, accumulate e^{laplace_tau (T - t)}-weighted trapezoid sums of u at every node.
  double laplace_tau = 0.0;
};

struct HeatRun {
  std::vector<double> r_grid;
  std::vector<double> t_grid;
  std::vector<double> boundary_trace;  // u(r_outer, t_n)
  std::vector<double> flux;            // outer flux samples
  std::vector<double> final_slice;     // u(r, T)
  std::vector<double> field;           // row-major (t, r) when stored
  std::vector<double> laplace_nodes;   // scaled transforms of u(r_j, .) when requested
  std::vector<double> heat_content;    // \int u dx at every t_n
  double l2_space_time = 0.0;          // ||u||_{L2(0,T;L2)}
  double l2_final = 0.0;               // ||u(.,T)||_{L2}
  double dt = 0.0;
  std::size_t first_nonzero = 0;       // first time index with u != 0
  double tau = 0.0;
  double T = 0.0;

  std::size_t n_r() const { return r_grid.size(); }
  std::size_t n_t() const { return t_grid.size(); }
  bool has_field() const { return !field.empty(); }
};

// max(0, T - (R_omega + eta)/sqrt(tau)): before this time the flux vanishes.
double flux_onset(double tau, double T, double R_omega, double eta);

// Uniform time grid on [0, T] with dt = min(T/n_t, (2 eta/sqrt(tau))/window_steps).
std::vector<double> heat_time_grid(const Discretization& disc, double tau, double eta);

HeatRun solve_heat(const HeatProblem& problem, int n_r, const HeatOptions& options = {});

// The wave-driven problem: flux f_{B,T,tau} on the outer sphere, insulated cavity.
// Refuses (ConfigError) when fewer than 20 steps fall in the firing window.
HeatRun solve_radial_heat(const BodySpec& body, const ProbeBall& probe, const Discretization& disc,
                          double tau, const HeatOptions& options = {});

// Same flux on the full ball (no cavity), used as a reference.
HeatRun solve_radial_heat_no_cavity(const BodySpec& body, const ProbeBall& probe,
                                    const Discretization& disc, double tau,
                                    const HeatOptions& options = {});

// Solve a tridiagonal system in place (no pivoting). Throws NumericError if a
// pivot falls below 1e-14 in magnitude.
void solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                       std::vector<double> upper, std::vector<double>& rhs);

}  // namespace enclosure
