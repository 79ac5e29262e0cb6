// Sweep orchestration and persistence: CSV rows, JSON manifest and extraction report.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "enclosure/config.hpp"
#include "enclosure/extraction.hpp"
#include "enclosure/heat.hpp"

namespace enclosure {

inline constexpr const char* kToolVersion = "0.3.0";

// Forward solve and indicator at one tau. Range failures are rethrown naming tau.
IndicatorSample run_tau(const RunConfig& config, double tau);

// One worker per tau, at most `jobs` at a time; the result is sorted by tau.
std::vector<IndicatorSample> run_sweep(const RunConfig& config, int jobs = 1);

// Discrete L2(0,T; L2(dOmega)) norm of the driving flux on the run's time grid.
double flux_l2_norm(const HeatRun& run, const BodySpec& body);

std::string sweep_csv(const std::vector<IndicatorSample>& samples);
std::vector<IndicatorSample> parse_sweep_csv(const std::string& text);

nlohmann::json extraction_report(const std::vector<IndicatorSample>& samples, const RunConfig& config);

struct SweepFiles {
  std::filesystem::path csv;
  std::filesystem::path manifest;
  std::filesystem::path report;
};

nlohmann::json run_manifest(const RunConfig& config, const std::vector<IndicatorSample>& samples,
                            const SweepFiles& files, const std::string& status);

// Runs the sweep and writes sweep.csv, report.json and manifest.json under out_dir.
SweepFiles run_sweep_to_dir(const RunConfig& config, const std::filesystem::path& out_dir, int jobs);

// Write to a sibling temporary file and rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace enclosure
