// Oracle suites shared by the CLI and the acceptance gate.
#pragma once

#include <string>
#include <vector>

#include "enclosure/transform.hpp"

namespace enclosure {

struct CheckRow {
  std::string suite;
  std::string detail;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

struct Prop31Row {
  double distance = 0.0;  // |x - p|
  double tau_hat = 0.0;
  double T_hat = 0.0;
  double eta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

// (2, 1.5, 0.5, 0.3) and four further admissible points.
std::vector<Prop31Row> prop31_table();

CheckRow verify_prop31(double tol = 1e-4);
// H_+ + H_- against the closed sum on a 5x5x3 (tau_hat, T_hat, eta) grid.
CheckRow verify_forms(double tol = 1e-10);
// Closed form against the surface oracle on a grid x grid (d, s) lattice; points
// outside the support annulus must be exactly zero in both.
CheckRow verify_kirchhoff(int grid = 50, int n_quad = 256, double tol = 1e-8);

struct DecompositionLevel {
  int n_r = 0;
  int window_steps = 0;
  Decomposition terms;
  double relative_residual = 0.0;
};

// Trace-route decomposition on the reference geometry at tau, one entry per (n_r, window_steps).
std::vector<DecompositionLevel> decomposition_study(double tau,
                                                    const std::vector<std::pair<int, int>>& levels);
CheckRow verify_decomposition(double tol = 1e-2);

struct MmsLevel {
  int n_r = 0;
  double dt = 0.0;
  double error = 0.0;         // space-time L2 error
  double conservation = 0.0;  // relative heat-balance residual at T
};

struct MmsStudy {
  std::vector<MmsLevel> levels;
  double order = 0.0;  // from the two finest levels
};

// Manufactured solution on the shell 0.4 <= r <= 1 with dt proportional to h.
MmsStudy mms_study(const std::vector<int>& n_r_levels);

// selector: prop31, kirchhoff, forms, decomposition or all. ConfigError otherwise.
std::vector<CheckRow> run_verifications(const std::string& selector);

std::string format_table(const std::vector<CheckRow>& rows);

}  // namespace enclosure
