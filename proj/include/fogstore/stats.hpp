#ifndef FOGSTORE_STATS_HPP
#define FOGSTORE_STATS_HPP

#include <cstddef>
#include <span>

namespace fogstore {

// Whisker-plot statistics of one sample set. Quartiles follow the
// median-of-halves rule: the overall median splits the sorted sample, the
// halves exclude it when the count is odd, and q1/q3 are the halves'
// medians. Variance is the unbiased (n-1) estimate, 0 for a single value.
struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;

  double iqr() const { return q3 - q1; }
};

FiveNumberSummary summarize(std::span<const double> samples);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of ys on xs. Zero residuals (including constant
// ys) report r_squared = 1; xs must not all coincide.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace fogstore

#endif
