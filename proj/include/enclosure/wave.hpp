// Free-space wave with tent initial velocity Psi_B, evaluated in closed form
// from Kirchhoff's spherical-mean formula, plus the time-reversed boundary flux.
#pragma once

#include "enclosure/geometry.hpp"
#include "enclosure/vec3.hpp"

namespace enclosure {

// Psi_B(x) = (eta - |x - p|) on B, zero outside.
double psi_B(const Vec3& x, const ProbeBall& probe);
double psi_B_radial(double d, double eta);

// v and its first derivatives as functions of d = |x - p| and wave time s.
// v is a piecewise cubic in (d, s) and C^1; derivatives at piece boundaries
// are right limits.
struct RadialWave {
  double v = 0.0;
  double dv_ds = 0.0;
  double dv_dd = 0.0;
};

RadialWave kirchhoff_radial(double d, double s, double eta);

struct WaveSample {
  Vec3 x;
  double s = 0.0;
  double v = 0.0;
  double dv_ds = 0.0;
};

WaveSample kirchhoff_eval(const Vec3& x, double s, const ProbeBall& probe);

// Surface quadrature of (1/(4 pi s)) \oint_{|y-x|=s} Psi_B dS. Independent
// check on kirchhoff_eval; n_quad >= 8 polar nodes per piece, 2*n_quad azimuthal.
double kirchhoff_oracle(const Vec3& x, double s, const ProbeBall& probe, int n_quad);

// v_tau(x,t) = v(x, sqrt(tau) t)/sqrt(tau) and its t-derivative.
struct ScaledWave {
  double v_tau = 0.0;
  double dv_tau_dt = 0.0;
};

ScaledWave scaled_wave(const Vec3& x, double t, double tau, const ProbeBall& probe);

enum class GradientMode { analytic, finite_difference };

// f_{B,T,tau}(x,t) = normal . grad_x v(x, sqrt(tau)(T-t)) / sqrt(tau).
double flux_trace(const Vec3& x, const Vec3& normal, double t, double T, double tau,
                  const ProbeBall& probe, GradientMode mode = GradientMode::analytic);

// Radial special case: the outer normal derivative at distance d from p.
double flux_trace_radial(double d, double t, double T, double tau, double eta);

}  // namespace enclosure
