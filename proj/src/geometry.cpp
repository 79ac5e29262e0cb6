#include "enclosure/geometry.hpp"

#include <string>

#include "enclosure/errors.hpp"

namespace enclosure {

double radius_sup(const Vec3& p, const Vec3& center, double radius) {
  if (!(radius > 0.0)) throw ConfigError("radius_sup: radius must be positive");
  return distance(p, center) + radius;
}

bool check_constraint(double eta, double R_D, double R_Omega) {
  if (!(eta > 0.0) || !(R_D > 0.0) || !(R_Omega > 0.0))
    throw ConfigError("check_constraint: eta, R_D and R_Omega must be positive");
  return eta + 2.0 * R_D > R_Omega;
}

void validate(const ProbeBall& probe) {
  if (!(probe.eta > 0.0)) throw ConfigError("probe.eta must be positive");
}

void validate(const BodySpec& body) {
  if (!(body.R_cavity > 0.0)) throw ConfigError("body.R_cavity must be positive");
  if (!(body.R_cavity < body.R_omega))
    throw ConfigError("body.R_cavity must be smaller than body.R_omega");
}

void validate(const Discretization& disc) {
  if (disc.n_r < 16) throw ConfigError("run.n_r must be at least 16");
  if (disc.n_t < 16) throw ConfigError("run.n_t must be at least 16");
  if (disc.window_steps < 1) throw ConfigError("run.window_steps must be positive");
  if (!(disc.T > 0.0)) throw ConfigError("run.T must be positive");
}

void validate_radial(const ProbeBall& probe, const BodySpec& body) {
  if (!(probe.p == body.center))
    throw ConfigError("radial mode requires probe.p to coincide with body.center");
}

double safe_eta(const ProbeBall& probe, const BodySpec& body) {
  return radius_sup(probe.p, body.center, body.R_omega);
}

}  // namespace enclosure
