#include "enclosure/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "enclosure/errors.hpp"
#include "enclosure/quadrature.hpp"

namespace enclosure {

IndicatorSample run_tau(const RunConfig& config, double tau) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const HeatRun run = solve_radial_heat(config.body, config.probe, config.disc, tau);
    IndicatorSample sample = indicator(run, tau, config.disc.T, config.probe, config.body, config.route);
    if (config.diagnostics) {
      const Decomposition d = decomposition_diagnostics(run, tau, config.disc.T, config.probe,
                                                        config.body, IndicatorRoute::residual);
      sample.J = d.J;
      sample.E = d.E;
      sample.Rh = d.Rh;
      sample.residual = d.residual;
    }
    sample.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sample;
  } catch (const RangeError& e) {
    throw RangeError("tau = " + std::to_string(tau) + ": " + e.what());
  }
}

std::vector<IndicatorSample> run_sweep(const RunConfig& config, int jobs) {
  const std::size_t n = config.tau_list.size();
  std::vector<IndicatorSample> samples(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        samples[i] = run_tau(config, config.tau_list[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, n);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  std::sort(samples.begin(), samples.end(),
            [](const IndicatorSample& a, const IndicatorSample& b) { return a.tau < b.tau; });
  return samples;
}

double flux_l2_norm(const HeatRun& run, const BodySpec& body) {
  std::vector<double> sq(run.flux.size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = run.flux[k] * run.flux[k];
  return std::sqrt(4.0 * std::numbers::pi * body.R_omega * body.R_omega * trapezoid(run.t_grid, sq));
}

namespace {

constexpr const char* kHeader = "tau,I_scaled,log_I_scaled,J,E,Rh,residual,wall_time,I_trace";

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string opt(const std::optional<double>& x) { return x ? num(*x) : ""; }

double parse_num(const std::string& field, std::size_t line) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double x = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("sweep CSV line " + std::to_string(line) + ": bad number '" + field + "'");
  }
}

}  // namespace

std::string sweep_csv(const std::vector<IndicatorSample>& samples) {
  std::string out = std::string(kHeader) + "\n";
  for (const IndicatorSample& s : samples) {
    out += num(s.tau) + "," + num(s.I_scaled) + "," + num(s.log_I_scaled) + "," + opt(s.J) + "," +
           opt(s.E) + "," + opt(s.Rh) + "," + opt(s.residual) + "," + num(s.wall_time) + "," +
           num(s.I_trace) + "\n";
  }
  return out;
}

std::vector<IndicatorSample> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("tau,I_scaled,log_I_scaled", 0) != 0)
    throw ConfigError("sweep CSV: missing header");
  std::vector<IndicatorSample> samples;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() < 3) throw ConfigError("sweep CSV line " + std::to_string(lineno) + ": too few columns");
    f.resize(9);
    IndicatorSample s;
    s.tau = parse_num(f[0], lineno);
    s.I_scaled = parse_num(f[1], lineno);
    s.positive = s.I_scaled > 0.0;
    s.log_I_scaled = parse_num(f[2], lineno);
    std::optional<double>* extra[] = {&s.J, &s.E, &s.Rh, &s.residual};
    for (int i = 0; i < 4; ++i)
      if (!f[3 + i].empty()) *extra[i] = parse_num(f[3 + i], lineno);
    if (!f[7].empty()) s.wall_time = parse_num(f[7], lineno);
    if (!f[8].empty()) s.I_trace = parse_num(f[8], lineno);
    samples.push_back(s);
  }
  std::sort(samples.begin(), samples.end(),
            [](const IndicatorSample& a, const IndicatorSample& b) { return a.tau < b.tau; });
  return samples;
}

nlohmann::json extraction_report(const std::vector<IndicatorSample>& samples, const RunConfig& config) {
  using nlohmann::json;
  const EnclosureEstimate est = estimate_enclosure(samples, config.probe.eta);
  json report;
  report["L_hat"] = est.L_hat;
  report["R_D_hat"] = est.R_D_hat;
  report["fit"] = {{"a", est.fit.a}, {"b", est.fit.b}, {"c", est.fit.c}};
  report["naive"] = {{"value", est.naive}, {"tau", est.naive_tau}};

  json classifier = json::array();
  for (double T : config.classify_T)
    classifier.push_back({{"T", T}, {"verdict", to_string(classify_T(samples, T, config.classify))}});
  report["classifier"] = classifier;
  report["classifier_options"] = {{"guard", config.classify.guard}, {"detrend", config.classify.detrend}};

  json table = json::array();
  for (const IndicatorSample& s : positive_sorted(samples))
    table.push_back({{"tau", s.tau},
                     {"residual", std::log(s.I_scaled) / std::sqrt(s.tau) - 2.0 * est.L_hat}});
  report["rate_residuals"] = table;

  if (config.L_true) {
    const RateReport rate = rate_check(samples, *config.L_true);
    json rows = json::array();
    for (const RateRow& r : rate.rows)
      rows.push_back({{"tau", r.tau}, {"residual", r.residual}, {"scale", r.scale}, {"ratio", r.ratio}});
    report["rate_check"] = {{"L_true", *config.L_true}, {"K", rate.K},
                            {"exponent", rate.exponent}, {"within_bound", rate.within_bound},
                            {"converging", rate.converging}, {"rows", rows}};
  }
  return report;
}

nlohmann::json run_manifest(const RunConfig& config, const std::vector<IndicatorSample>& samples,
                            const SweepFiles& files, const std::string& status) {
  using nlohmann::json;
  json timings = json::array();
  for (const IndicatorSample& s : samples) timings.push_back({{"tau", s.tau}, {"wall_time", s.wall_time}});
  return json{{"tool", "enclosure"},
              {"version", kToolVersion},
              {"config", config.source_text},
              {"resolved",
               {{"eta", config.probe.eta},
                {"R_omega", config.body.R_omega},
                {"R_cavity", config.body.R_cavity},
                {"T", config.disc.T},
                {"n_r", config.disc.n_r},
                {"n_t", config.disc.n_t},
                {"window_steps", config.disc.window_steps},
                {"route", to_string(config.route)},
                {"tau_list", config.tau_list}}},
              {"timings", timings},
              {"outputs",
               {{"sweep_csv", files.csv.string()},
                {"report", files.report.string()},
                {"manifest", files.manifest.string()}}},
              {"status", status}};
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SweepFiles run_sweep_to_dir(const RunConfig& config, const std::filesystem::path& out_dir, int jobs) {
  std::filesystem::create_directories(out_dir);
  const SweepFiles files{out_dir / "sweep.csv", out_dir / "manifest.json", out_dir / "report.json"};
  const std::vector<IndicatorSample> samples = run_sweep(config, jobs);
  write_atomic(files.csv, sweep_csv(samples));
  std::string status = "complete";
  try {
    write_atomic(files.report, extraction_report(samples, config).dump(2) + "\n");
  } catch (const NumericError& e) {
    status = std::string("extraction failed: ") + e.what();
    write_atomic(files.manifest, run_manifest(config, samples, files, status).dump(2) + "\n");
    throw;
  }
  write_atomic(files.manifest, run_manifest(config, samples, files, status).dump(2) + "\n");
  return files;
}

}  // namespace enclosure
