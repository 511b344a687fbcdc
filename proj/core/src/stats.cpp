#include "tickcoint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tickcoint/errors.hpp"

namespace tickcoint::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw DegenerateInputError("mean of empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  return covariance(x, x);
}

double covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("covariance: length mismatch");
  if (x.size() < 2) throw DegenerateInputError("covariance needs at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size() - 1);
}

double correlation(std::span<const double> x, std::span<const double> y) {
  return covariance(x, y) / std::sqrt(variance(x) * variance(y));
}

double autocovariance(std::span<const double> x, std::size_t lag) {
  if (lag >= x.size()) throw RangeError("autocovariance: lag exceeds sample length");
  const double m = mean(x);
  double s = 0.0;
  for (std::size_t i = 0; i + lag < x.size(); ++i) s += (x[i] - m) * (x[i + lag] - m);
  return s / static_cast<double>(x.size() - lag);
}

double quantile(std::vector<double> x, double p) {
  if (x.empty()) throw DegenerateInputError("quantile of empty sample");
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double iqr(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  return quantile(v, 0.75) - quantile(v, 0.25);
}

double rms(std::span<const double> x) {
  if (x.empty()) throw DegenerateInputError("rms of empty sample");
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s / static_cast<double>(x.size()));
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("fit_line: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw DegenerateInputError("fit_line needs at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw DegenerateInputError("fit_line: regressor has no spread");
  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      sse += r * r;
    }
    fit.slope_se = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  // Alternating series converges fast for x > ~0.3; below that the
  // survival is 1 to double precision.
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DegenerateInputError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsResult r;
  r.statistic = d;
  const double ne = std::sqrt(n * m / (n + m));
  r.p_value = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
  return r;
}

}  // namespace tickcoint::stats
