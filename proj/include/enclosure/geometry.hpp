// Probe ball, concentric-sphere body and discretization parameters.
#pragma once

#include "enclosure/vec3.hpp"

namespace enclosure {

// The ball B = B_eta(p) that carries the tent initial velocity of the auxiliary wave.
struct ProbeBall {
  Vec3 p;
  double eta = 0.0;
};

// Omega = B_{R_omega}(center), cavity D = B_{R_cavity}(center).
struct BodySpec {
  double R_omega = 1.0;
  double R_cavity = 0.4;
  Vec3 center;
};

struct Discretization {
  int n_r = 2000;          // radial cells
  int n_t = 1000;          // floor on time steps over [0, T]
  double T = 1.0;
  int window_steps = 40;   // minimum steps across the firing window 2*eta/sqrt(tau)
};

// sup_{x in B_radius(center)} |x - p|.
double radius_sup(const Vec3& p, const Vec3& center, double radius);

// eta + 2 R_D > R_Omega. Throws ConfigError on non-positive input.
bool check_constraint(double eta, double R_D, double R_Omega);

// Throws ConfigError if any invariant of the value types is violated.
void validate(const ProbeBall& probe);
void validate(const BodySpec& body);
void validate(const Discretization& disc);

// Radial mode needs p at the common centre of both spheres.
void validate_radial(const ProbeBall& probe, const BodySpec& body);

// eta >= R_Omega(p) satisfies the constraint for any cavity.
double safe_eta(const ProbeBall& probe, const BodySpec& body);

}  // namespace enclosure
