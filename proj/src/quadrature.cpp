#include "enclosure/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace enclosure {

namespace {

GaussRule build_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : (n == 1 ? x : p1);
      const double pm = n == 1 ? 1.0 : p0;
      dp = static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t panels, std::size_t order) {
  if (b == a) return 0.0;
  const GaussRule& rule = gauss_legendre(order);
  const double width = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double mid = lo + 0.5 * width;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      sum += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * sum;
  }
  return total;
}

double integrate_gl_pieces(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, std::size_t panels,
                           std::size_t order) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) total += integrate_gl(f, cuts[i], cuts[i + 1], panels, order);
  }
  return total;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    total += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return total;
}

}  // namespace enclosure
