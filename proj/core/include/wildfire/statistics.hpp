#pragma once

#include <cstddef>
#include <span>

namespace wildfire {

/// Mean and 95% t-interval of a sample. sd and ci_half are NaN when n < 2.
struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double ci_half = 0.0;

  bool has_ci() const;
  double ci_low() const { return mean - ci_half; }
  double ci_high() const { return mean + ci_half; }
};

Summary summarize(std::span<const double> xs);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;  // two-sided

  bool significant(double alpha = 0.05) const { return p_value < alpha; }
};

/// Welch's unequal-variance t-test. Both samples need n >= 2. With zero
/// variance on both sides the result is t = +-inf, p = 0 if the means
/// differ, and t = 0, p = 1 otherwise.
WelchResult welch_test(std::span<const double> a, std::span<const double> b);

}  // namespace wildfire
