#include "enclosure/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "enclosure/errors.hpp"

namespace enclosure {

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
    std::ostringstream out;
    out << origin_;
    if (node.IsDefined() && node.Mark().line >= 0) out << ":" << node.Mark().line + 1;
    out << ": " << message;
    throw ConfigError(out.str());
  }

  void only_keys(const YAML::Node& map, const std::string& section,
                 const std::set<std::string>& allowed) const {
    if (!map.IsMap()) fail(map, "section '" + section + "' must be a mapping");
    for (const auto& item : map) {
      const std::string key = item.first.as<std::string>();
      if (!allowed.contains(key)) fail(item.first, "unknown key '" + section + "." + key + "'");
    }
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& name) const {
    if (!node.IsScalar()) fail(node, "'" + name + "' must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, "'" + name + "' has the wrong type");
    }
  }

  std::vector<double> list(const YAML::Node& node, const std::string& name) const {
    if (!node.IsSequence()) fail(node, "'" + name + "' must be a list");
    std::vector<double> out;
    for (const auto& item : node) out.push_back(scalar<double>(item, name));
    return out;
  }

  Vec3 vec(const YAML::Node& node, const std::string& name) const {
    const std::vector<double> v = list(node, name);
    if (v.size() != 3) fail(node, "'" + name + "' must have three components");
    return {v[0], v[1], v[2]};
  }

 private:
  std::string origin_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  const Reader rd(origin);
  if (!root.IsMap()) throw ConfigError(origin + ": top level must be a mapping");
  rd.only_keys(root, "", {"probe", "body", "run", "mode", "extract"});
  for (const char* required : {"probe", "body", "run"})
    if (!root[required]) throw ConfigError(origin + ": missing section '" + required + "'");

  RunConfig cfg;
  cfg.source_text = text;

  const YAML::Node probe = root["probe"];
  rd.only_keys(probe, "probe", {"p", "eta", "eta_preset"});
  if (probe["p"]) cfg.probe.p = rd.vec(probe["p"], "probe.p");
  if (probe["eta_preset"]) {
    cfg.eta_preset = rd.scalar<std::string>(probe["eta_preset"], "probe.eta_preset");
    if (cfg.eta_preset != "safe") rd.fail(probe["eta_preset"], "eta_preset must be 'safe'");
    if (probe["eta"]) rd.fail(probe["eta"], "give either probe.eta or probe.eta_preset, not both");
  } else {
    if (!probe["eta"]) rd.fail(probe, "missing probe.eta");
    cfg.probe.eta = rd.scalar<double>(probe["eta"], "probe.eta");
    if (!(cfg.probe.eta > 0.0)) rd.fail(probe["eta"], "probe.eta must be positive");
  }

  const YAML::Node body = root["body"];
  rd.only_keys(body, "body", {"R_omega", "R_cavity", "center"});
  if (!body["R_omega"] || !body["R_cavity"]) rd.fail(body, "body needs R_omega and R_cavity");
  cfg.body.R_omega = rd.scalar<double>(body["R_omega"], "body.R_omega");
  cfg.body.R_cavity = rd.scalar<double>(body["R_cavity"], "body.R_cavity");
  if (body["center"]) cfg.body.center = rd.vec(body["center"], "body.center");
  if (!(cfg.body.R_cavity > 0.0 && cfg.body.R_cavity < cfg.body.R_omega))
    rd.fail(body, "need 0 < R_cavity < R_omega");
  if (cfg.eta_preset == "safe") cfg.probe.eta = safe_eta(cfg.probe, cfg.body);

  const YAML::Node run = root["run"];
  rd.only_keys(run, "run", {"T", "n_r", "n_t", "window_steps", "tau_list", "route", "diagnostics"});
  if (!run["T"]) rd.fail(run, "missing run.T");
  cfg.disc.T = rd.scalar<double>(run["T"], "run.T");
  if (!(cfg.disc.T > 0.0)) rd.fail(run["T"], "run.T must be positive");
  if (run["n_r"]) cfg.disc.n_r = rd.scalar<int>(run["n_r"], "run.n_r");
  if (cfg.disc.n_r < 16) rd.fail(run["n_r"], "run.n_r must be at least 16");
  if (run["n_t"]) cfg.disc.n_t = rd.scalar<int>(run["n_t"], "run.n_t");
  if (cfg.disc.n_t < 16) rd.fail(run["n_t"], "run.n_t must be at least 16");
  if (run["window_steps"]) cfg.disc.window_steps = rd.scalar<int>(run["window_steps"], "run.window_steps");
  if (cfg.disc.window_steps < 1) rd.fail(run["window_steps"], "run.window_steps must be positive");
  if (!run["tau_list"]) rd.fail(run, "missing run.tau_list");
  cfg.tau_list = rd.list(run["tau_list"], "run.tau_list");
  if (cfg.tau_list.empty()) rd.fail(run["tau_list"], "run.tau_list must not be empty");
  for (double tau : cfg.tau_list)
    if (!(tau > 0.0)) rd.fail(run["tau_list"], "every tau must be positive");
  if (run["route"]) {
    try {
      cfg.route = parse_route(rd.scalar<std::string>(run["route"], "run.route"));
    } catch (const ConfigError& e) {
      rd.fail(run["route"], e.what());
    }
  }
  if (run["diagnostics"]) cfg.diagnostics = rd.scalar<bool>(run["diagnostics"], "run.diagnostics");

  if (const YAML::Node mode = root["mode"]) {
    rd.only_keys(mode, "mode", {"strict", "radial"});
    if (mode["strict"]) cfg.strict = rd.scalar<bool>(mode["strict"], "mode.strict");
    if (mode["radial"]) cfg.radial = rd.scalar<bool>(mode["radial"], "mode.radial");
    if (!cfg.radial) rd.fail(mode["radial"], "only radial mode is supported by the heat solver");
  }
  if (!(cfg.probe.p == cfg.body.center))
    rd.fail(probe["p"] ? probe["p"] : probe, "radial mode requires probe.p == body.center");

  if (const YAML::Node ex = root["extract"]) {
    rd.only_keys(ex, "extract", {"guard", "detrend", "classify_T", "L_true"});
    if (ex["guard"]) cfg.classify.guard = rd.scalar<double>(ex["guard"], "extract.guard");
    if (ex["detrend"]) cfg.classify.detrend = rd.scalar<bool>(ex["detrend"], "extract.detrend");
    if (ex["classify_T"]) cfg.classify_T = rd.list(ex["classify_T"], "extract.classify_T");
    if (ex["L_true"]) cfg.L_true = rd.scalar<double>(ex["L_true"], "extract.L_true");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::vector<std::string> validate_config(const RunConfig& config) {
  validate(config.probe);
  validate(config.body);
  validate(config.disc);
  validate_radial(config.probe, config.body);
  if (config.tau_list.empty()) throw ConfigError("tau_list must not be empty");
  std::vector<std::string> warnings;
  const double R_D = radius_sup(config.probe.p, config.body.center, config.body.R_cavity);
  const double R_O = radius_sup(config.probe.p, config.body.center, config.body.R_omega);
  if (!check_constraint(config.probe.eta, R_D, R_O)) {
    const std::string msg = "constraint eta + 2 R_D(p) > R_Omega(p) violated: " +
                            std::to_string(config.probe.eta) + " + 2*" + std::to_string(R_D) +
                            " <= " + std::to_string(R_O);
    if (config.strict) throw ConfigError(msg);
    warnings.push_back(msg);
  }
  return warnings;
}

RunConfig reference_config() {
  RunConfig cfg;
  cfg.probe = {{0.0, 0.0, 0.0}, 0.5};
  cfg.body = {1.0, 0.4, {0.0, 0.0, 0.0}};
  cfg.disc = {2000, 1000, 1.0, 400};
  cfg.tau_list = {50, 75, 110, 160, 220, 290, 360, 400};
  cfg.classify_T = {1.0, 4.0};
  cfg.L_true = 0.9;
  return cfg;
}

}  // namespace enclosure
