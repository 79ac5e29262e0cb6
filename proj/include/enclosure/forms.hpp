// Closed-form objects attached to the Laplace-transformed wave: the sinh kernel,
// the cubic polynomials f_tau/g_tau, H_+ + H_-, the Fourier symbol g(z; eta) of
// the tent, and both sides of the Yukawa-potential identity with a quadrature
// oracle for the left-hand side.
#pragma once

#include <complex>
#include <cstddef>

#include "enclosure/geometry.hpp"
#include "enclosure/vec3.hpp"

namespace enclosure {

// sinh(sqrt(tau)|x-p|)/|x-p|, equal to sqrt(tau) at x = p.
double sinh_kernel(const Vec3& x, const Vec3& p, double tau);
double sinh_kernel_radial(double r, double tau);

double f_tau_poly(double xi, double tau, double T, double eta);
double g_tau_poly(double xi, double tau, double T, double eta);

// Arguments of H_+/H_-: tau_hat and T_hat are sqrt(tau) and sqrt(tau)*T of the heat problem.
struct HCoefficients {
  double tau_hat = 1.0;
  double T_hat = 1.0;
  double eta = 0.5;
};

double H_plus(const HCoefficients& c);   // four-term form, first pair
double H_minus(const HCoefficients& c);  // four-term form, second pair
double H_sum(const HCoefficients& c);    // closed sum form
double H_sum_scaled(const HCoefficients& c);  // e^{tau_hat T_hat} * H_sum
double H_sum_polynomial(const HCoefficients& c);  // H_plus + H_minus

// g(z; eta) = z^{-3} {(2/(eta z))(1 - cos eta z) - sin eta z}; Taylor branch for |eta z| < 1e-2.
std::complex<double> g_even(std::complex<double> z, double eta);
std::complex<double> g_even_direct(std::complex<double> z, double eta);
std::complex<double> g_even_series(std::complex<double> z, double eta);
// Closed form of g on the imaginary axis, g(i tau; eta).
double g_imaginary(double tau, double eta);

// Fourier transform of Psi_B.
std::complex<double> psi_hat(const Vec3& xi, const ProbeBall& probe);

// w_1^* in closed form on B_{sqrt(tau)T - eta}(p); DomainError elsewhere.
double w1_star(const Vec3& x, double tau, double T, const ProbeBall& probe);
double w1_star_scaled(const Vec3& x, double tau, double T, const ProbeBall& probe);

// Yukawa potential (1/4pi) \int e^{-sqrt(tau)|x-y|}/|x-y| Psi_B(y) dy by radial quadrature.
double yukawa_psi(double r, double tau, double eta);

// e^{tau T} w^* through the closed forms: (e^{tau T} w_1^* + w_R^*)/tau.
double w_star_scaled_closed(double r, double tau, double T, double eta);

struct QuadSpec {
  std::size_t order = 16;          // Gauss points per panel
  std::size_t initial_panels = 2;  // per direction and piece
  int max_levels = 7;
  double rel_tol = 1e-6;
};

struct Prop31Result {
  double value = 0.0;      // I_1 - I_2
  double tau_part = 0.0;   // I_1, the tau*v contribution
  double dt_part = 0.0;    // I_2, the d_t v contribution
  double last_change = 0.0;
  int levels = 0;
  bool converged = false;
};

// (tau^2/4pi) \int e^{-tau|x-y|}/|x-y| (tau v(y,T) - d_t v(y,T)) dy by tensor
// Gauss-Legendre in (|y-p|, cos angle) over the support shell, refined by doubling.
Prop31Result prop31_lhs(const Vec3& x, double tau_hat, double T_hat, const ProbeBall& probe,
                        const QuadSpec& quad = {});

// (H_+ + H_-) sinh(tau|x-p|)/|x-p|.
double prop31_rhs(const Vec3& x, double tau_hat, double T_hat, double eta, const Vec3& p);

}  // namespace enclosure
