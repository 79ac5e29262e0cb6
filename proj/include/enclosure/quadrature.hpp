// Gauss-Legendre rules and the composite trapezoid helpers shared by the
// solver, the transforms and the oracles.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace enclosure {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule, cached per n (thread-safe).
const GaussRule& gauss_legendre(std::size_t n);

// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t panels = 1, std::size_t order = 16);

// Same, but also splitting at every breakpoint strictly inside (a, b).
double integrate_gl_pieces(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, std::size_t panels = 1,
                           std::size_t order = 16);

// Trapezoid rule of y over the (possibly non-uniform) abscissae x.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace enclosure
