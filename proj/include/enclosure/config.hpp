// Run configuration loaded from YAML. Every error names the file and line.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enclosure/extraction.hpp"
#include "enclosure/geometry.hpp"
#include "enclosure/transform.hpp"

namespace enclosure {

struct RunConfig {
  ProbeBall probe;
  BodySpec body;
  Discretization disc;
  std::vector<double> tau_list;
  IndicatorRoute route = IndicatorRoute::residual;
  bool diagnostics = true;  // J, E, R_h columns
  bool strict = true;
  bool radial = true;
  std::string eta_preset;   // "" or "safe"
  ClassifyOptions classify;
  std::vector<double> classify_T;
  std::optional<double> L_true;
  std::string source_text;  // verbatim file contents, echoed in the manifest
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");

// Checks that depend on several fields, including the eta constraint in strict mode.
// Returns warnings issued when strict mode is off.
std::vector<std::string> validate_config(const RunConfig& config);

// The reference geometry: R_omega = 1, R_D = 0.4, eta = 0.5, T = 1, p at the centre.
RunConfig reference_config();

}  // namespace enclosure
