#include "enclosure/forms.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "enclosure/errors.hpp"
#include "enclosure/quadrature.hpp"
#include "enclosure/wave.hpp"

namespace enclosure {

double sinh_kernel_radial(double r, double tau) {
  if (!(tau > 0.0)) throw DomainError("sinh_kernel: tau must be positive");
  const double rt = std::sqrt(tau);
  const double z = rt * r;
  if (z < 1e-4) return rt * (1.0 + z * z / 6.0);
  return std::sinh(z) / r;
}

double sinh_kernel(const Vec3& x, const Vec3& p, double tau) {
  return sinh_kernel_radial(distance(x, p), tau);
}

double f_tau_poly(double xi, double tau, double T, double eta) {
  const double c3 = tau / 6.0;
  const double c2 = 1.0 - tau / 4.0 * (eta + 2.0 * T);
  const double c1 = 0.5 * tau * T * (eta + T) - (eta + 2.0 * T) + 2.0 / tau;
  const double c0 = tau / 12.0 * (eta - 2.0 * T) * (eta + T) * (eta + T) + T * (eta + T) -
                    (eta + 2.0 * T) / tau + 2.0 / (tau * tau);
  return ((c3 * xi + c2) * xi + c1) * xi + c0;
}

double g_tau_poly(double xi, double tau, double T, double eta) {
  const double c3 = -tau / 6.0;
  const double c2 = -(1.0 + tau / 4.0 * (eta - 2.0 * T));
  const double c1 = 0.5 * tau * T * (eta - T) - (eta - 2.0 * T) - 2.0 / tau;
  const double c0 = tau / 12.0 * (eta + 2.0 * T) * (eta - T) * (eta - T) + T * (eta - T) -
                    (eta - 2.0 * T) / tau - 2.0 / (tau * tau);
  return ((c3 * xi + c2) * xi + c1) * xi + c0;
}

double H_plus(const HCoefficients& c) {
  const auto [t, T, e] = c;
  return f_tau_poly(T, t, T, e) * std::exp(-t * T) -
         f_tau_poly(T + e, t, T, e) * std::exp(-t * (T + e));
}

double H_minus(const HCoefficients& c) {
  const auto [t, T, e] = c;
  return g_tau_poly(T - e, t, T, e) * std::exp(-t * (T - e)) -
         g_tau_poly(T, t, T, e) * std::exp(-t * T);
}

double H_sum_polynomial(const HCoefficients& c) { return H_plus(c) + H_minus(c); }

double H_sum(const HCoefficients& c) {
  const auto [t, T, e] = c;
  return 4.0 / (t * t) * std::exp(-t * T) - (e + 2.0 / t) / t * std::exp(-t * (T + e)) +
         (e - 2.0 / t) / t * std::exp(-t * (T - e));
}

double H_sum_scaled(const HCoefficients& c) {
  const auto [t, T, e] = c;
  (void)T;
  return 4.0 / (t * t) - (e + 2.0 / t) / t * std::exp(-t * e) + (e - 2.0 / t) / t * std::exp(t * e);
}

std::complex<double> g_even_direct(std::complex<double> z, double eta) {
  // Half-angle form: 2(1 - cos u)/u - sin u = 2 sin h (sin h / h - cos h), h = u/2.
  const std::complex<double> h = 0.5 * eta * z;
  const std::complex<double> s = std::sin(h);
  return 2.0 * s * (s / h - std::cos(h)) / (z * z * z);
}

std::complex<double> g_even_series(std::complex<double> z, double eta) {
  const std::complex<double> u2 = eta * eta * z * z;
  const double e3 = eta * eta * eta;
  return e3 * (1.0 / 12.0 + u2 * (-1.0 / 180.0 + u2 * (1.0 / 6720.0 - u2 / 453600.0)));
}

std::complex<double> g_even(std::complex<double> z, double eta) {
  if (std::abs(eta * z) < 1e-2) return g_even_series(z, eta);
  return g_even_direct(z, eta);
}

double g_imaginary(double tau, double eta) {
  const double t3 = tau * tau * tau;
  const double t4 = t3 * tau;
  return 2.0 / (eta * t4) + (1.0 / (2.0 * t3) - 1.0 / (eta * t4)) * std::exp(tau * eta) -
         (1.0 / (2.0 * t3) + 1.0 / (eta * t4)) * std::exp(-tau * eta);
}

std::complex<double> psi_hat(const Vec3& xi, const ProbeBall& probe) {
  const std::complex<double> phase = std::polar(1.0, -dot(xi, probe.p));
  return 4.0 * std::numbers::pi * probe.eta * phase * g_even(norm(xi), probe.eta);
}

namespace {

void require_w1_region(double r, double tau, double T, double eta) {
  if (!(tau > 0.0)) throw DomainError("w1_star: tau must be positive");
  if (!(r < std::sqrt(tau) * T - eta))
    throw DomainError("w1_star: closed form holds only on the ball |x-p| < sqrt(tau) T - eta");
}

}  // namespace

double w1_star_scaled(const Vec3& x, double tau, double T, const ProbeBall& probe) {
  const double r = distance(x, probe.p);
  require_w1_region(r, tau, T, probe.eta);
  const double rt = std::sqrt(tau);
  return H_sum_scaled({rt, rt * T, probe.eta}) * sinh_kernel_radial(r, tau) / tau;
}

double w1_star(const Vec3& x, double tau, double T, const ProbeBall& probe) {
  if (tau * T > 500.0)
    throw RangeError("w1_star: tau*T > 500 leaves double range; use w1_star_scaled");
  return w1_star_scaled(x, tau, T, probe) * std::exp(-tau * T);
}

double yukawa_psi(double r, double tau, double eta) {
  const double k = std::sqrt(tau);
  // Angular average of e^{-k|x-y|}/|x-y| over |y-p| = rho, times rho^2/2.
  const auto integrand = [&](double rho) {
    if (rho == 0.0) return 0.0;
    double kernel;
    if (r == 0.0) {
      kernel = 2.0 * std::exp(-k * rho) / rho;
    } else {
      kernel = (std::exp(-k * std::abs(rho - r)) - std::exp(-k * (rho + r))) / (k * r * rho);
    }
    return 0.5 * rho * rho * psi_B_radial(rho, eta) * kernel;
  };
  const std::array<double, 1> cut{r};
  return integrate_gl_pieces(integrand, 0.0, eta, cut, 8, 24);
}

double w_star_scaled_closed(double r, double tau, double T, double eta) {
  const ProbeBall probe{{0.0, 0.0, 0.0}, eta};
  return (w1_star_scaled({r, 0.0, 0.0}, tau, T, probe) + yukawa_psi(r, tau, eta)) / tau;
}

namespace {

struct Prop31Parts {
  double tau_part;
  double dt_part;
};

Prop31Parts prop31_tensor(double a, double tau_hat, double T_hat, double eta, std::size_t panels,
                          std::size_t order) {
  const GaussRule& rule = gauss_legendre(order);
  const std::array<std::array<double, 2>, 2> shells{{{T_hat - eta, T_hat}, {T_hat, T_hat + eta}}};
  double tau_part = 0.0;
  double dt_part = 0.0;
  for (const auto& shell : shells) {
    const double rho_w = (shell[1] - shell[0]) / static_cast<double>(panels);
    for (std::size_t pr = 0; pr < panels; ++pr) {
      const double rho_mid = shell[0] + (static_cast<double>(pr) + 0.5) * rho_w;
      for (std::size_t i = 0; i < order; ++i) {
        const double rho = rho_mid + 0.5 * rho_w * rule.nodes[i];
        const double w_rho = 0.5 * rho_w * rule.weights[i];
        const RadialWave w = kirchhoff_radial(rho, T_hat, eta);
        if (w.v == 0.0 && w.dv_ds == 0.0) continue;
        double angular = 0.0;
        if (a == 0.0) {
          angular = 2.0 * std::exp(-tau_hat * rho) / rho;
        } else {
          const double c_w = 2.0 / static_cast<double>(panels);
          for (std::size_t pc = 0; pc < panels; ++pc) {
            const double c_mid = -1.0 + (static_cast<double>(pc) + 0.5) * c_w;
            for (std::size_t j = 0; j < order; ++j) {
              const double c = c_mid + 0.5 * c_w * rule.nodes[j];
              const double D = std::sqrt(a * a + rho * rho - 2.0 * a * rho * c);
              angular += 0.5 * c_w * rule.weights[j] * std::exp(-tau_hat * D) / D;
            }
          }
        }
        const double base = w_rho * rho * rho * 2.0 * std::numbers::pi * angular;
        tau_part += base * tau_hat * w.v;
        dt_part += base * w.dv_ds;
      }
    }
  }
  const double pre = tau_hat * tau_hat / (4.0 * std::numbers::pi);
  return {pre * tau_part, pre * dt_part};
}

}  // namespace

Prop31Result prop31_lhs(const Vec3& x, double tau_hat, double T_hat, const ProbeBall& probe,
                        const QuadSpec& quad) {
  const double a = distance(x, probe.p);
  if (!(T_hat > probe.eta)) throw DomainError("prop31_lhs: requires T_hat > eta");
  if (!(a < T_hat - probe.eta)) throw DomainError("prop31_lhs: requires |x-p| < T_hat - eta");
  Prop31Result result;
  std::size_t panels = quad.initial_panels;
  Prop31Parts prev = prop31_tensor(a, tau_hat, T_hat, probe.eta, panels, quad.order);
  for (int level = 1; level <= quad.max_levels; ++level) {
    panels *= 2;
    const Prop31Parts next = prop31_tensor(a, tau_hat, T_hat, probe.eta, panels, quad.order);
    const double v_prev = prev.tau_part - prev.dt_part;
    const double v_next = next.tau_part - next.dt_part;
    result.value = v_next;
    result.tau_part = next.tau_part;
    result.dt_part = next.dt_part;
    result.levels = level;
    result.last_change = std::abs(v_next - v_prev) / std::max(std::abs(v_next), 1e-300);
    prev = next;
    if (result.last_change < quad.rel_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double prop31_rhs(const Vec3& x, double tau_hat, double T_hat, double eta, const Vec3& p) {
  return H_sum({tau_hat, T_hat, eta}) * sinh_kernel(x, p, tau_hat * tau_hat);
}

}  // namespace enclosure
