#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tickcoint::stats {

double mean(std::span<const double> x);
// Unbiased sample variance (n - 1 denominator).
double variance(std::span<const double> x);
double covariance(std::span<const double> x, std::span<const double> y);
double correlation(std::span<const double> x, std::span<const double> y);

// Sample autocovariance at `lag` around the sample mean, divided by n - lag.
double autocovariance(std::span<const double> x, std::size_t lag);

// Linear interpolation quantile (type 7), p in [0, 1].
double quantile(std::vector<double> x, double p);
double iqr(std::span<const double> x);
double rms(std::span<const double> x);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares y = a + b x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test. The p-value uses the Kolmogorov
// limiting distribution with the Stephens small-sample correction on the
// effective size n m / (n + m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// P(K > x) for the Kolmogorov distribution.
double kolmogorov_survival(double x);

}  // namespace tickcoint::stats
