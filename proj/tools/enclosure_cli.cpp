// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 configuration error, 3 numeric range or estimation error.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "enclosure/config.hpp"
#include "enclosure/errors.hpp"
#include "enclosure/heat.hpp"
#include "enclosure/runner.hpp"
#include "enclosure/verify.hpp"
#include "enclosure/wave.hpp"

namespace fs = std::filesystem;
using namespace enclosure;

namespace {

struct Common {
  std::string config;
  std::string out;
  int jobs = 1;
  std::optional<bool> strict;
};

RunConfig load(const Common& c) {
  RunConfig config = c.config.empty() ? reference_config() : load_config(c.config);
  if (c.strict) config.strict = *c.strict;
  for (const std::string& w : validate_config(config)) std::cerr << "warning: " << w << "\n";
  return config;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
    write_atomic(out, text);
  }
}

void add_strict(CLI::App* cmd, Common& c) {
  cmd->add_flag_callback("--strict", [&c] { c.strict = true; }, "abort when eta + 2 R_D <= R_Omega");
  cmd->add_flag_callback("--no-strict", [&c] { c.strict = false; }, "only warn on the eta constraint");
}

int cmd_wave_probe(double eta, double d_max, double s_max, int n, const std::string& out) {
  std::string csv = "d,s,v,dv_ds\n";
  char buf[128];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = d_max * i / (n - 1);
      const double s = s_max * j / (n - 1);
      const RadialWave w = kirchhoff_radial(d, s, eta);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", d, s, w.v, w.dv_ds);
      csv += buf;
    }
  emit(out, csv);
  return 0;
}

int cmd_flux_gen(const Common& c, double tau) {
  const RunConfig config = load(c);
  const std::vector<double> t = heat_time_grid(config.disc, tau, config.probe.eta);
  std::string csv = "t,f\n";
  char buf[96];
  for (double tk : t) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", tk,
                  flux_trace_radial(config.body.R_omega, tk, config.disc.T, tau, config.probe.eta));
    csv += buf;
  }
  emit(c.out, csv);
  return 0;
}

void write_field(const fs::path& path, const HeatRun& run) {
  // Layout: 8-byte magic "ENCFLD01", uint64 n_t, uint64 n_r, t_grid, r_grid,
  // then u row-major by time; native-endian doubles.
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.write("ENCFLD01", 8);
  const std::uint64_t dims[2] = {run.n_t(), run.n_r()};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  const auto put = [&out](const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  };
  put(run.t_grid);
  put(run.r_grid);
  put(run.field);
}

int cmd_forward(const Common& c, double tau, bool field) {
  const RunConfig config = load(c);
  HeatOptions options;
  options.store_field = field;
  const HeatRun run = solve_radial_heat(config.body, config.probe, config.disc, tau, options);
  const fs::path dir = c.out.empty() ? fs::path("forward_out") : fs::path(c.out);
  fs::create_directories(dir);
  std::string csv = "t,u,f\n";
  char buf[128];
  for (std::size_t k = 0; k < run.n_t(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", run.t_grid[k], run.boundary_trace[k], run.flux[k]);
    csv += buf;
  }
  write_atomic(dir / "boundary_trace.csv", csv);
  if (field) write_field(dir / "field.bin", run);
  std::cout << "wrote " << (dir / "boundary_trace.csv").string() << (field ? " and field.bin" : "") << "\n";
  return 0;
}

int cmd_sweep(const Common& c) {
  const RunConfig config = load(c);
  const fs::path dir = c.out.empty() ? fs::path("sweep_out") : fs::path(c.out);
  const SweepFiles files = run_sweep_to_dir(config, dir, c.jobs);
  const nlohmann::json report = nlohmann::json::parse(read_file(files.report));
  std::cout << "sweep: " << config.tau_list.size() << " tau values -> " << files.csv.string() << "\n"
            << "L_hat = " << report["L_hat"].get<double>()
            << ", R_D_hat = " << report["R_D_hat"].get<double>() << "\n";
  return 0;
}

int cmd_extract(const Common& c, const std::string& sweep_path) {
  const RunConfig config = load(c);
  const std::vector<IndicatorSample> samples = parse_sweep_csv(read_file(sweep_path));
  emit(c.out, extraction_report(samples, config).dump(2) + "\n");
  return 0;
}

int cmd_verify_prop31(const std::string& out) {
  const std::vector<Prop31Row> rows = prop31_table();
  std::string csv = "x,tau_hat,T_hat,lhs,rhs,rel_err\n";
  char buf[200];
  for (const Prop31Row& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.3e\n", r.distance, r.tau_hat,
                  r.T_hat, r.lhs, r.rhs, r.rel_err);
    csv += buf;
  }
  if (!out.empty()) emit(out, csv);
  const std::vector<CheckRow> table = run_verifications("prop31");
  std::cout << format_table(table);
  return table.front().pass ? 0 : 1;
}

int cmd_verify(const std::string& selector) {
  const std::vector<CheckRow> table = run_verifications(selector);
  std::cout << format_table(table);
  for (const CheckRow& r : table)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-reversal enclosure method for heat-equation cavities"};
  app.require_subcommand(1);
  Common common;

  auto* wave = app.add_subcommand("wave-probe", "dump (d, s, v, dv_ds) of the Kirchhoff wave");
  double eta = 0.5, d_max = 1.5, s_max = 1.5;
  int n = 101;
  std::string wave_out;
  wave->add_option("--eta", eta, "probe radius")->check(CLI::PositiveNumber);
  wave->add_option("--d-max", d_max, "largest distance from p")->check(CLI::PositiveNumber);
  wave->add_option("--s-max", s_max, "largest wave time")->check(CLI::PositiveNumber);
  wave->add_option("-n,--points", n, "grid points per axis")->check(CLI::Range(2, 100000));
  wave->add_option("--out", wave_out, "CSV path (stdout if omitted)");

  double tau = 50.0;
  bool field = false;
  auto* flux = app.add_subcommand("flux-gen", "boundary flux f on the solver time grid");
  flux->add_option("--config", common.config, "YAML run configuration");
  flux->add_option("--tau", tau, "Laplace parameter")->check(CLI::PositiveNumber);
  flux->add_option("--out", common.out, "CSV path (stdout if omitted)");
  add_strict(flux, common);

  auto* forward = app.add_subcommand("forward", "solve the heat problem at one tau");
  forward->add_option("--config", common.config, "YAML run configuration");
  forward->add_option("--tau", tau, "Laplace parameter")->check(CLI::PositiveNumber);
  forward->add_option("--out", common.out, "output directory");
  forward->add_flag("--field", field, "also write field.bin");
  add_strict(forward, common);

  auto* sweep = app.add_subcommand("indicator-sweep", "indicator over the tau list, report and manifest");
  sweep->add_option("--config", common.config, "YAML run configuration")->required();
  sweep->add_option("--out", common.out, "output directory");
  sweep->add_option("--jobs", common.jobs, "parallel workers")->check(CLI::PositiveNumber);
  add_strict(sweep, common);

  std::string sweep_path;
  auto* extract = app.add_subcommand("extract", "fit and classify an existing sweep CSV");
  extract->add_option("--sweep", sweep_path, "sweep CSV")->required();
  extract->add_option("--config", common.config, "YAML run configuration (eta, classifier)");
  extract->add_option("--out", common.out, "report path (stdout if omitted)");
  add_strict(extract, common);

  std::string prop_out;
  auto* prop = app.add_subcommand("verify-prop31", "Yukawa identity against quadrature");
  prop->add_option("--out", prop_out, "CSV of the checked points");

  std::string selector = "all";
  auto* verify = app.add_subcommand("verify-all", "oracle suites with a pass/fail table");
  verify->add_option("--suite", selector, "prop31, kirchhoff, forms, decomposition or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*wave) return cmd_wave_probe(eta, d_max, s_max, n, wave_out);
    if (*flux) return cmd_flux_gen(common, tau);
    if (*forward) return cmd_forward(common, tau, field);
    if (*sweep) return cmd_sweep(common);
    if (*extract) return cmd_extract(common, sweep_path);
    if (*prop) return cmd_verify_prop31(prop_out);
    if (*verify) return cmd_verify(selector);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
