#pragma once

// Estimators of the cointegrating parameter and of the memory parameter.

#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include "tickcoint/market.hpp"

namespace tickcoint {

using Complex = std::complex<double>;

// Taper h on [0, 1] with h(0) = h(1) = 0 and h_l(t) = h(t) exp(2 pi i l t).
class Taper {
 public:
  enum class Kind { kCosine };

  Taper() = default;
  static Taper cosine() { return Taper(); }
  static Taper from_string(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  // h(t) = (1 - cos 2 pi t) / 2 and its first two derivatives.
  double h(double t) const;
  double h_prime(double t) const;
  double h_second(double t) const;

  Complex h_ell(std::size_t ell, double t) const;
  Complex h_ell_prime(std::size_t ell, double t) const;

  // w_l(j, n) = n (h_l((j+1)/n) - h_l(j/n)).
  Complex weight(std::size_t ell, std::size_t j, std::size_t n) const;
  // n (w_l(j+1, n) - w_l(j, n)).
  Complex second_weight(std::size_t ell, std::size_t j, std::size_t n) const;

  bool operator==(const Taper&) const = default;

 private:
  Kind kind_ = Kind::kCosine;
};

struct TaperConfig {
  Taper taper;
  std::size_t m = 3;

  bool operator==(const TaperConfig&) const = default;
};

// theta_hat = sum y2 y1 / sum y2^2 over the samples y(1..n).
double ols_theta(std::span<const double> y1, std::span<const double> y2);
// Same formula under the spurious (non-cointegrated) model.
double spurious_delta(std::span<const double> y1, std::span<const double> y2);

// d_{dx,l} = sum_{j=1}^n h_l(j/n) (x_j - x_{j-1}); x holds x_1..x_n, x0 is x_0.
Complex tapered_dft(std::span<const double> x, double x0, const Taper& taper, std::size_t ell);
// Summation-by-parts route: -(1/n) sum_{j=0}^{n-1} w_l(j, n) x_j.
Complex tapered_dft_by_parts(std::span<const double> x, double x0, const Taper& taper, std::size_t ell);

struct TaperEstimate {
  double theta = 0.0;
  Complex ratio;             // theta_tilde before Re()
  double denominator = 0.0;  // sum_l |d_{dy2,l}|^2
};

TaperEstimate taper_estimate(std::span<const double> y1, std::span<const double> y2, const TaperConfig& cfg,
                             double y1_0 = 0.0, double y2_0 = 0.0);
double taper_theta(std::span<const double> y1, std::span<const double> y2, const TaperConfig& cfg,
                   double y1_0 = 0.0, double y2_0 = 0.0);

// Taper estimator on exact window integrals of length delta, with n =
// floor(span / delta) windows and X(0) = 0.
TaperEstimate ctaper_estimate(const StepPath& y1, const StepPath& y2, double delta, const TaperConfig& cfg);
double ctaper_theta(const StepPath& y1, const StepPath& y2, double delta, const TaperConfig& cfg);

// Log-periodogram (GPH) memory estimate d over frequencies 1..bandwidth.
double gph_memory(std::span<const double> x, std::size_t bandwidth);

struct EstimateReport {
  std::string estimator;
  double theta_hat = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  double delta = 0.0;
  double dt = 0.0;
  double denominator = 0.0;
  bool frequency_warning = false;  // some l >= n / 2
};

}  // namespace tickcoint
