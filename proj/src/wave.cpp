#include "enclosure/wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "enclosure/quadrature.hpp"

namespace enclosure {

namespace {

// Antiderivative of (eta - rho) rho and its derivative.
double tent_moment(double rho, double eta) { return eta * rho * rho / 2.0 - rho * rho * rho / 3.0; }
double tent_moment_d(double rho, double eta) { return (eta - rho) * rho; }

constexpr double kTinyDistance = 1e-13;

}  // namespace

double psi_B_radial(double d, double eta) { return d < eta ? eta - d : 0.0; }

double psi_B(const Vec3& x, const ProbeBall& probe) {
  return psi_B_radial(distance(x, probe.p), probe.eta);
}

RadialWave kirchhoff_radial(double d, double s, double eta) {
  if (d < kTinyDistance) d = 0.0;
  RadialWave w;
  if (d + s <= eta) {
    // The sphere lies inside B; the integral reduces to a polynomial.
    if (s >= d) {
      w.v = s * (eta - s) - d * d / 3.0;
      w.dv_ds = eta - 2.0 * s;
      w.dv_dd = -2.0 * d / 3.0;
    } else {
      w.v = s * (eta - d) - s * s * s / (3.0 * d);
      w.dv_ds = eta - d - s * s / d;
      w.dv_dd = -s + s * s * s / (3.0 * d * d);
    }
    return w;
  }
  const double lo = std::abs(d - s);
  const double hi = std::min(d + s, eta);
  if (lo >= hi) return {};
  // The sphere crosses the boundary of B: upper limit is eta.
  const double sgn = s >= d ? 1.0 : -1.0;  // d|d-s|/ds, right limit at s == d
  const double top = eta * eta * eta / 6.0;
  w.v = (top - tent_moment(lo, eta)) / (2.0 * d);
  w.dv_ds = -tent_moment_d(lo, eta) * sgn / (2.0 * d);
  w.dv_dd = -w.v / d + tent_moment_d(lo, eta) * sgn / (2.0 * d);
  return w;
}

WaveSample kirchhoff_eval(const Vec3& x, double s, const ProbeBall& probe) {
  if (s < 0.0) throw std::invalid_argument("kirchhoff_eval: s must be non-negative");
  const RadialWave w = kirchhoff_radial(distance(x, probe.p), s, probe.eta);
  return {x, s, w.v, w.dv_ds};
}

double kirchhoff_oracle(const Vec3& x, double s, const ProbeBall& probe, int n_quad) {
  if (n_quad < 8) throw std::invalid_argument("kirchhoff_oracle: n_quad must be >= 8");
  if (s == 0.0) return 0.0;
  const double d = distance(x, probe.p);
  const double eta = probe.eta;
  // Orthonormal frame with the polar axis pointing from x towards p.
  Vec3 axis{0.0, 0.0, 1.0};
  if (d > 0.0) axis = (probe.p - x) * (1.0 / d);
  const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = helper - axis * dot(helper, axis);
  e1 = e1 * (1.0 / norm(e1));
  const Vec3 e2{axis.y * e1.z - axis.z * e1.y, axis.z * e1.x - axis.x * e1.z,
                axis.x * e1.y - axis.y * e1.x};

  // Polar angle where the sphere |y - x| = s meets the boundary of B.
  std::array<double, 1> cut{};
  std::size_t n_cut = 0;
  if (d > 0.0) {
    const double c = (d * d + s * s - eta * eta) / (2.0 * d * s);
    if (c > -1.0 && c < 1.0) cut[n_cut++] = std::acos(c);
  }

  const int n_phi = 2 * n_quad;
  std::vector<double> cos_phi(static_cast<std::size_t>(n_phi)), sin_phi(cos_phi.size());
  for (int k = 0; k < n_phi; ++k) {
    const double phi = 2.0 * std::numbers::pi * (k + 0.5) / n_phi;
    cos_phi[static_cast<std::size_t>(k)] = std::cos(phi);
    sin_phi[static_cast<std::size_t>(k)] = std::sin(phi);
  }
  const auto ring = [&](double theta) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    double sum = 0.0;
    for (std::size_t k = 0; k < cos_phi.size(); ++k) {
      const Vec3 dir = axis * ct + e1 * (st * cos_phi[k]) + e2 * (st * sin_phi[k]);
      sum += psi_B(x + dir * s, probe);
    }
    return sum * (2.0 * std::numbers::pi / n_phi) * st;
  };
  const double surface = integrate_gl_pieces(ring, 0.0, std::numbers::pi,
                                             std::span<const double>(cut.data(), n_cut), 1,
                                             static_cast<std::size_t>(n_quad));
  // (1/(4 pi s)) * s^2 * \int sin(theta) dtheta dphi
  return surface * s / (4.0 * std::numbers::pi);
}

ScaledWave scaled_wave(const Vec3& x, double t, double tau, const ProbeBall& probe) {
  if (!(tau > 0.0)) throw std::invalid_argument("scaled_wave: tau must be positive");
  const double rt = std::sqrt(tau);
  const RadialWave w = kirchhoff_radial(distance(x, probe.p), rt * t, probe.eta);
  return {w.v / rt, w.dv_ds};
}

double flux_trace_radial(double d, double t, double T, double tau, double eta) {
  const double rt = std::sqrt(tau);
  return kirchhoff_radial(d, rt * (T - t), eta).dv_dd / rt;
}

double flux_trace(const Vec3& x, const Vec3& normal, double t, double T, double tau,
                  const ProbeBall& probe, GradientMode mode) {
  const double rt = std::sqrt(tau);
  const double s = rt * (T - t);
  if (mode == GradientMode::analytic) {
    const double d = distance(x, probe.p);
    if (d == 0.0) return 0.0;
    const double dv_dd = kirchhoff_radial(d, s, probe.eta).dv_dd;
    return dv_dd * dot(normal, x - probe.p) / (d * rt);
  }
  // Central differences along the normal with one Richardson level.
  const double h = 1e-5 * probe.eta;
  const auto v_at = [&](double offset) {
    return kirchhoff_radial(distance(x + normal * offset, probe.p), s, probe.eta).v;
  };
  const double coarse = (v_at(h) - v_at(-h)) / (2.0 * h);
  const double fine = (v_at(h / 2) - v_at(-h / 2)) / h;
  return (4.0 * fine - coarse) / 3.0 / rt;
}

}  // namespace enclosure
