// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "enclosure/config.hpp"
#include "enclosure/extraction.hpp"
#include "enclosure/runner.hpp"
#include "enclosure/verify.hpp"

using namespace enclosure;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(const std::string& id, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::printf("[%s] %-3s %s\n", pass ? "PASS" : "FAIL", id.c_str(), what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

}  // namespace

int main() {
  {
    const auto t0 = Clock::now();
    const CheckRow r = verify_prop31(1e-4);
    const double s = since(t0);
    report("1", r.pass && s <= 60.0,
           fmt("Yukawa identity at %zu points: max rel err %.2e (tol 1e-4), %.2f s (limit 60)",
               prop31_table().size(), r.max_error, s));
  }
  {
    const auto t0 = Clock::now();
    const CheckRow r = verify_forms(1e-10);
    const double s = since(t0);
    report("2", r.pass && s <= 1.0,
           fmt("closed sum vs polynomial assembly, %s: max rel err %.2e (tol 1e-10), %.3f s (limit 1)",
               r.detail.c_str(), r.max_error, s));
  }
  {
    const auto t0 = Clock::now();
    const CheckRow r = verify_kirchhoff(50, 256, 1e-8);
    const double s = since(t0);
    report("3", r.pass && s <= 30.0,
           fmt("Kirchhoff vs surface oracle, %s: max rel err %.2e (tol 1e-8), %.2f s (limit 30)",
               r.detail.c_str(), r.max_error, s));
  }
  {
    const auto t0 = Clock::now();
    const MmsStudy m = mms_study({100, 200, 400});
    const double s = since(t0);
    const double c = m.levels.back().conservation;
    report("4", m.order >= 1.9 && c <= 1e-6 && s <= 60.0,
           fmt("manufactured solution, n_r 100/200/400: order %.3f (min 1.9), conservation %.1e (tol 1e-6), "
               "%.2f s (limit 60)", m.order, c, s));
  }
  {
    const auto t0 = Clock::now();
    const auto levels = decomposition_study(50.0, {{1000, 1600}, {2000, 6400}});
    const double s = since(t0);
    const double coarse = levels.front().relative_residual, fine = levels.back().relative_residual;
    report("5", fine <= 1e-2 && fine < coarse && s <= 120.0,
           fmt("I = J + E + R_h at tau 50: rel residual %.2e -> %.2e under refinement (tol 1e-2), %.2f s "
               "(limit 120)", coarse, fine, s));
  }

  const RunConfig ref = reference_config();
  const auto t_sweep = Clock::now();
  const std::vector<IndicatorSample> sweep = run_sweep(ref, 1);
  const EnclosureEstimate est = estimate_enclosure(sweep, ref.probe.eta);
  const double sweep_seconds = since(t_sweep);
  const double L = 0.9;
  report("6a", std::abs(est.L_hat - L) <= 0.1 * L && sweep_seconds <= 900.0,
         fmt("fitted L_hat %.4f vs 0.9 (within 10%%), R_D_hat %.4f, fit b %.3f, sweep %.2f s (limit 900)",
             est.L_hat, est.R_D_hat, est.fit.b, sweep_seconds));
  report("6b", std::abs(est.naive - L) <= 0.2 * L,
         fmt("naive log(I)/(2 sqrt(tau)) at tau %.0f: %.4f vs 0.9 (within 20%%)", est.naive_tau, est.naive));

  {
    const auto t0 = Clock::now();
    const Verdict hi = classify_T(sweep, 4.0);
    const Verdict lo = classify_T(sweep, 1.0);
    const double s = since(t0);
    report("7", hi == Verdict::decay_to_zero && lo == Verdict::growth_to_infinity && s <= 1.0,
           fmt("classifier: T=4 -> %s, T=1 -> %s, %.4f s (limit 1)", to_string(hi).c_str(),
               to_string(lo).c_str(), s));
  }
  {
    const double low = flux_l2_norm(solve_radial_heat(ref.body, ref.probe, ref.disc, 50.0), ref.body);
    const double high = flux_l2_norm(solve_radial_heat(ref.body, ref.probe, ref.disc, 400.0), ref.body);
    report("8", high <= 2.0 * low,
           fmt("flux L2 norm: tau 400 %.4e vs tau 50 %.4e (ratio %.3f, limit 2)", high, low, high / low));
  }
  {
    std::size_t positive = 0;
    double smallest = INFINITY;
    for (const IndicatorSample& s : sweep) {
      positive += s.I_scaled > 0.0 ? 1 : 0;
      smallest = std::min(smallest, s.I_scaled);
    }
    report("9", positive == sweep.size(),
           fmt("indicator positive at %zu of %zu tau values (smallest %.4e at tau %.0f)", positive,
               sweep.size(), smallest, sweep.front().tau));
  }

  std::printf("acceptance: %d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
