// Turns an indicator sweep into the enclosing-sphere estimate, the T
// classifier and the convergence-rate table.
#pragma once

#include <string>
#include <vector>

#include "enclosure/transform.hpp"

namespace enclosure {

enum class Verdict { decay_to_zero, growth_to_infinity, indeterminate };

std::string to_string(Verdict verdict);

// log I ~ 2 sqrt(tau) a + b log(tau) + c
struct FitModel {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct EnclosureEstimate {
  double L_hat = 0.0;      // eta + R_D(p)
  double R_D_hat = 0.0;
  FitModel fit;
  double naive = 0.0;      // log I / (2 sqrt(tau)) at the largest tau
  double naive_tau = 0.0;
};

struct RateRow {
  double tau = 0.0;
  double residual = 0.0;   // |log I / sqrt(tau) - 2 L_true|
  double scale = 0.0;      // log(tau)/sqrt(tau)
  double ratio = 0.0;      // residual / scale
};

struct RateReport {
  std::vector<RateRow> rows;
  double K = 0.0;          // least-squares fit of residual = K scale
  double exponent = 0.0;   // slope of log residual against log scale
  bool within_bound = false;  // every residual <= 2 K scale
  bool converging = false;    // residuals strictly decreasing along the sweep
};

struct SweepResult {
  std::vector<IndicatorSample> samples;  // sorted by tau
  EnclosureEstimate estimate;
  Verdict verdict = Verdict::indeterminate;
  std::vector<double> rate_residuals;
};

// Samples sorted by tau, keeping those with positive I; EstimationError-type
// NumericError when fewer than four remain.
std::vector<IndicatorSample> positive_sorted(std::vector<IndicatorSample> samples);

EnclosureEstimate estimate_enclosure(const std::vector<IndicatorSample>& sweep, double eta);

struct ClassifyOptions {
  double guard = 2.0;
  // Remove the fitted algebraic term b log(tau) before testing monotonicity.
  bool detrend = true;
};

Verdict classify_T(const std::vector<IndicatorSample>& sweep, double T,
                   const ClassifyOptions& options = {});

RateReport rate_check(const std::vector<IndicatorSample>& sweep, double L_true);

}  // namespace enclosure
