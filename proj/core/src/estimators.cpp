#include "tickcoint/estimators.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "tickcoint/errors.hpp"
#include "tickcoint/fft.hpp"
#include "tickcoint/stats.hpp"

namespace tickcoint {

namespace {

constexpr double kPi = std::numbers::pi;

Complex phase(std::size_t ell, double t) {
  const double a = 2.0 * kPi * static_cast<double>(ell) * t;
  return {std::cos(a), std::sin(a)};
}

double regression_through_origin(std::span<const double> y1, std::span<const double> y2, const char* name) {
  if (y1.size() != y2.size()) throw InputError(std::string(name) + ": series differ in length");
  if (y1.empty()) throw DegenerateInputError(std::string(name) + ": empty sample");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < y1.size(); ++j) {
    num += y2[j] * y1[j];
    den += y2[j] * y2[j];
  }
  if (!(den > 0.0)) throw DegenerateInputError(std::string(name) + ": regressor is identically zero");
  return num / den;
}

}  // namespace

Taper Taper::from_string(const std::string& name) {
  if (name == "cosine") return Taper::cosine();
  throw ParameterError("unknown taper '" + name + "' (expected cosine)");
}

std::string Taper::name() const { return "cosine"; }

double Taper::h(double t) const { return 0.5 * (1.0 - std::cos(2.0 * kPi * t)); }
double Taper::h_prime(double t) const { return kPi * std::sin(2.0 * kPi * t); }
double Taper::h_second(double t) const { return 2.0 * kPi * kPi * std::cos(2.0 * kPi * t); }

Complex Taper::h_ell(std::size_t ell, double t) const { return h(t) * phase(ell, t); }

Complex Taper::h_ell_prime(std::size_t ell, double t) const {
  const Complex i(0.0, 1.0);
  return (h_prime(t) + 2.0 * kPi * static_cast<double>(ell) * i * h(t)) * phase(ell, t);
}

Complex Taper::weight(std::size_t ell, std::size_t j, std::size_t n) const {
  const double dn = static_cast<double>(n);
  return dn * (h_ell(ell, static_cast<double>(j + 1) / dn) - h_ell(ell, static_cast<double>(j) / dn));
}

Complex Taper::second_weight(std::size_t ell, std::size_t j, std::size_t n) const {
  return static_cast<double>(n) * (weight(ell, j + 1, n) - weight(ell, j, n));
}

double ols_theta(std::span<const double> y1, std::span<const double> y2) {
  return regression_through_origin(y1, y2, "ols_theta");
}

double spurious_delta(std::span<const double> y1, std::span<const double> y2) {
  return regression_through_origin(y1, y2, "spurious_delta");
}

Complex tapered_dft(std::span<const double> x, double x0, const Taper& taper, std::size_t ell) {
  const std::size_t n = x.size();
  if (n < 2) throw InputError("tapered_dft: need n >= 2");
  const double dn = static_cast<double>(n);
  Complex d = 0.0;
  double prev = x0;
  for (std::size_t j = 1; j <= n; ++j) {
    d += taper.h_ell(ell, static_cast<double>(j) / dn) * (x[j - 1] - prev);
    prev = x[j - 1];
  }
  return d;
}

Complex tapered_dft_by_parts(std::span<const double> x, double x0, const Taper& taper, std::size_t ell) {
  const std::size_t n = x.size();
  if (n < 2) throw InputError("tapered_dft: need n >= 2");
  Complex s = taper.weight(ell, 0, n) * x0;
  for (std::size_t j = 1; j < n; ++j) s += taper.weight(ell, j, n) * x[j - 1];
  return -s / static_cast<double>(n);
}

TaperEstimate taper_estimate(std::span<const double> y1, std::span<const double> y2, const TaperConfig& cfg,
                             double y1_0, double y2_0) {
  if (y1.size() != y2.size()) throw InputError("taper_theta: series differ in length");
  if (cfg.m < 1) throw ParameterError("taper_theta: m must be >= 1");
  if (!(y1.size() > 2 * cfg.m)) throw InputError("taper_theta: need n > 2m observations");
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t ell = 1; ell <= cfg.m; ++ell) {
    const Complex d1 = tapered_dft(y1, y1_0, cfg.taper, ell);
    const Complex d2 = tapered_dft(y2, y2_0, cfg.taper, ell);
    num += d1 * std::conj(d2);
    den += std::norm(d2);
  }
  if (!(den > 0.0)) throw DegenerateInputError("taper_theta: tapered periodogram of y2 is zero");
  TaperEstimate e;
  e.ratio = num / den;
  e.theta = e.ratio.real();
  e.denominator = den;
  return e;
}

double taper_theta(std::span<const double> y1, std::span<const double> y2, const TaperConfig& cfg, double y1_0,
                   double y2_0) {
  return taper_estimate(y1, y2, cfg, y1_0, y2_0).theta;
}

TaperEstimate ctaper_estimate(const StepPath& y1, const StepPath& y2, double delta, const TaperConfig& cfg) {
  if (!(delta > 0.0)) throw ParameterError("ctaper_theta: delta must be positive");
  const double start = std::max(y1.origin, y2.origin);
  const double span = std::min(y1.horizon, y2.horizon) - start;
  const auto n = static_cast<std::size_t>(std::floor(span / delta * (1.0 + 1e-12)));
  if (n < 2 * cfg.m + 1)
    throw ConfigError("ctaper_theta: fewer than 2m + 1 windows of length delta fit in the sample", 0,
                      "estimator.delta");
  const auto a1 = average_over(y1, delta, n, start);
  const auto a2 = average_over(y2, delta, n, start);
  return taper_estimate(a1, a2, cfg, 0.0, 0.0);
}

double ctaper_theta(const StepPath& y1, const StepPath& y2, double delta, const TaperConfig& cfg) {
  return ctaper_estimate(y1, y2, delta, cfg).theta;
}

double gph_memory(std::span<const double> x, std::size_t bandwidth) {
  const std::size_t n = x.size();
  if (bandwidth < 3) throw InputError("gph_memory: too few frequencies (bandwidth must be >= 3)");
  if (2 * bandwidth >= n) throw InputError("gph_memory: bandwidth must be < n / 2");
  const auto dft = fft::forward_real(x);
  std::vector<double> reg(bandwidth), logp(bandwidth);
  for (std::size_t ell = 1; ell <= bandwidth; ++ell) {
    const double w = 2.0 * kPi * static_cast<double>(ell) / static_cast<double>(n);
    const double periodogram = std::norm(dft[ell]) / (2.0 * kPi * static_cast<double>(n));
    if (!(periodogram > 0.0)) throw DegenerateInputError("gph_memory: zero periodogram ordinate");
    reg[ell - 1] = -2.0 * std::log(std::abs(2.0 * std::sin(0.5 * w)));
    logp[ell - 1] = std::log(periodogram);
  }
  return stats::fit_line(reg, logp).slope;
}

}  // namespace tickcoint
