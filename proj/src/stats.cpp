#include "fogstore/stats.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fogstore {

namespace {

double median_of(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

FiveNumberSummary summarize(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("cannot summarize an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  FiveNumberSummary summary;
  summary.n = n;
  summary.min = sorted.front();
  summary.max = sorted.back();
  summary.median = median_of(sorted);
  if (n == 1) {
    summary.q1 = summary.q3 = sorted.front();
  } else {
    const std::span<const double> all(sorted);
    summary.q1 = median_of(all.subspan(0, n / 2));
    summary.q3 = median_of(all.subspan((n + 1) / 2));
  }

  double sum = 0.0;
  for (double x : sorted) sum += x;
  summary.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : sorted) ss += (x - summary.mean) * (x - summary.mean);
    summary.variance = ss / static_cast<double>(n - 1);
  }
  return summary;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::domain_error("xs and ys must have equal length");
  const std::size_t n = xs.size();
  if (n < 2) throw std::domain_error("fit needs at least 2 points");

  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  if (sxx == 0.0) throw std::domain_error("xs must not all be equal");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;

  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double predicted = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - predicted) * (ys[i] - predicted);
    ss_tot += (ys[i] - y_mean) * (ys[i] - y_mean);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  if (ss_res == 0.0) fit.r_squared = 1.0;
  return fit;
}

}  // namespace fogstore
