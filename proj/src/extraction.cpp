#include "enclosure/extraction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "enclosure/errors.hpp"

namespace enclosure {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::decay_to_zero: return "decay_to_zero";
    case Verdict::growth_to_infinity: return "growth_to_infinity";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::vector<IndicatorSample> positive_sorted(std::vector<IndicatorSample> samples) {
  std::erase_if(samples, [](const IndicatorSample& s) { return !(s.I_scaled > 0.0); });
  std::sort(samples.begin(), samples.end(),
            [](const IndicatorSample& a, const IndicatorSample& b) { return a.tau < b.tau; });
  if (samples.size() < 4)
    throw NumericError("estimation needs at least 4 samples with positive indicator, got " +
                       std::to_string(samples.size()));
  return samples;
}

EnclosureEstimate estimate_enclosure(const std::vector<IndicatorSample>& sweep, double eta) {
  const std::vector<IndicatorSample> s = positive_sorted(sweep);
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double tau = s[static_cast<std::size_t>(i)].tau;
    A(i, 0) = 2.0 * std::sqrt(tau);
    A(i, 1) = std::log(tau);
    A(i, 2) = 1.0;
    y(i) = std::log(s[static_cast<std::size_t>(i)].I_scaled);
  }
  // Column scaling keeps the rank test meaningful.
  const Eigen::VectorXd scale = A.colwise().norm().transpose();
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) throw NumericError("estimation fit is singular: tau values too clustered");
  const Eigen::VectorXd coef = qr.solve(y).cwiseQuotient(scale);

  EnclosureEstimate est;
  est.fit = {coef(0), coef(1), coef(2)};
  est.L_hat = coef(0);
  est.R_D_hat = coef(0) - eta;
  est.naive_tau = s.back().tau;
  est.naive = std::log(s.back().I_scaled) / (2.0 * std::sqrt(s.back().tau));
  return est;
}

Verdict classify_T(const std::vector<IndicatorSample>& sweep, double T,
                   const ClassifyOptions& options) {
  const std::vector<IndicatorSample> s = positive_sorted(sweep);
  const double b = options.detrend ? estimate_enclosure(s, 0.0).fit.b : 0.0;
  const std::size_t start = s.size() / 2;
  std::vector<double> m;
  for (std::size_t i = start; i < s.size(); ++i)
    m.push_back(std::log(s[i].I_scaled) - std::sqrt(s[i].tau) * T - b * std::log(s[i].tau));

  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < m.size(); ++i) {
    increasing = increasing && m[i] > m[i - 1];
    decreasing = decreasing && m[i] < m[i - 1];
  }
  const double change = m.back() - m.front();
  if (decreasing && -change > options.guard) return Verdict::decay_to_zero;
  if (increasing && change > options.guard) return Verdict::growth_to_infinity;
  return Verdict::indeterminate;
}

RateReport rate_check(const std::vector<IndicatorSample>& sweep, double L_true) {
  std::vector<IndicatorSample> s = sweep;
  std::sort(s.begin(), s.end(),
            [](const IndicatorSample& a, const IndicatorSample& b) { return a.tau < b.tau; });
  RateReport report;
  double sxy = 0.0;
  double sxx = 0.0;
  double lx = 0.0, ly = 0.0, lxx = 0.0, lxy = 0.0;
  std::size_t nlog = 0;
  for (const IndicatorSample& x : s) {
    if (!(x.I_scaled > 0.0)) continue;
    RateRow row;
    row.tau = x.tau;
    row.residual = std::abs(std::log(x.I_scaled) / std::sqrt(x.tau) - 2.0 * L_true);
    row.scale = std::log(x.tau) / std::sqrt(x.tau);
    row.ratio = row.scale > 0.0 ? row.residual / row.scale : 0.0;
    sxy += row.residual * row.scale;
    sxx += row.scale * row.scale;
    if (row.residual > 0.0 && row.scale > 0.0) {
      const double u = std::log(row.scale);
      const double v = std::log(row.residual);
      lx += u;
      ly += v;
      lxx += u * u;
      lxy += u * v;
      ++nlog;
    }
    report.rows.push_back(row);
  }
  report.K = sxx > 0.0 ? sxy / sxx : 0.0;
  if (nlog >= 2) {
    const double nn = static_cast<double>(nlog);
    const double denom = nn * lxx - lx * lx;
    report.exponent = denom != 0.0 ? (nn * lxy - lx * ly) / denom : 0.0;
  }
  report.within_bound = !report.rows.empty();
  report.converging = report.rows.size() >= 2;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const RateRow& row = report.rows[i];
    report.within_bound = report.within_bound && row.residual <= 2.0 * report.K * row.scale;
    if (i > 0) report.converging = report.converging && row.residual < report.rows[i - 1].residual;
  }
  return report;
}

}  // namespace enclosure
