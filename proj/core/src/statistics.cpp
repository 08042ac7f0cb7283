#include "wildfire/statistics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "wildfire/errors.hpp"

namespace wildfire {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sample_variance(std::span<const double> xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

bool Summary::has_ci() const { return n >= 2 && std::isfinite(ci_half); }

Summary summarize(std::span<const double> xs) {
  Summary s;
  s.n = xs.size();
  if (xs.empty()) {
    s.mean = s.sd = s.ci_half = kNaN;
    return s;
  }
  s.mean = mean_of(xs);
  if (xs.size() < 2) {
    s.sd = s.ci_half = kNaN;
    return s;
  }
  s.sd = std::sqrt(sample_variance(xs, s.mean));
  const boost::math::students_t dist(static_cast<double>(xs.size() - 1));
  s.ci_half = boost::math::quantile(dist, 0.975) * s.sd / std::sqrt(static_cast<double>(xs.size()));
  return s;
}

WelchResult welch_test(std::span<const double> a, std::span<const double> b) {
  require(a.size() >= 2 && b.size() >= 2, "welch_test needs at least two samples per group");
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = sample_variance(a, ma) / static_cast<double>(a.size());
  const double vb = sample_variance(b, mb) / static_cast<double>(b.size());
  WelchResult r;
  const double se2 = va + vb;
  if (se2 == 0.0) {
    r.df = static_cast<double>(a.size() + b.size() - 2);
    if (ma == mb) {
      r.t = 0.0;
      r.p_value = 1.0;
    } else {
      r.t = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    return r;
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.df = se2 * se2 /
         (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  const boost::math::students_t dist(r.df);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

}  // namespace wildfire
