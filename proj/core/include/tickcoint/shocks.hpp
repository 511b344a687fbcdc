#pragma once

// Efficient shocks e_k and microstructure shocks eta_k (and their levels xi).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tickcoint/clock.hpp"
#include "tickcoint/random.hpp"

namespace tickcoint {

struct EfficientSpec {
  enum class Law { kGaussian, kTwoPoint, kUniform };

  double variance = 1.0;
  Law law = Law::kGaussian;

  void validate() const;
  bool operator==(const EfficientSpec&) const = default;
};

std::string to_string(EfficientSpec::Law law);
EfficientSpec::Law efficient_law_from_string(const std::string& name);

std::vector<double> gen_efficient(const EfficientSpec& spec, std::size_t n, Seed seed);

enum class NoiseRegime { kNone, kWeak, kStrong, kStandard };

// How the level sequence xi is built in the strong and standard regimes.
enum class XiConstruction {
  kIidGaussian,            // standard: xi iid N(0, 1)
  kIndependentLongMemory,  // strong: Gaussian, rho(k) = memory_scale k^(2H-2)
  kLeverageSquare,         // strong: xi_k = Y_{k+1}^2 - 1
  kLeverageHermite23,      // standard: xi_k = H2(Y_{k+1}) + b H3(Y_{k+1}), b = -0.75 by default
  kMartingaleProduct,      // standard: xi_k = zeta_k exp(sigma Y_{k+1} / 2)
};

std::string to_string(NoiseRegime r);
NoiseRegime noise_regime_from_string(const std::string& name);
std::string to_string(XiConstruction c);
XiConstruction xi_construction_from_string(const std::string& name);

inline constexpr double kHermite23Weight = -0.75;

struct NoiseSpec {
  NoiseRegime regime = NoiseRegime::kNone;
  // Weak: H in (0, 1/2). Strong with an independent long-memory xi: H in
  // (1/2, 1). Leverage constructions inherit their memory from the driver.
  double hurst = 0.25;
  // c_i: eta = c fGn in the weak regime, xi = c * (raw construction) otherwise.
  double scale = 1.0;
  XiConstruction xi = XiConstruction::kIidGaussian;
  double memory_scale = 0.5;
  // sigma in exp(sigma Y / 2) for the martingale product.
  double driver_sigma = 1.0;
  // b in xi_k = H2(Y_{k+1}) + b H3(Y_{k+1}).
  double hermite_weight = kHermite23Weight;

  bool needs_driver() const noexcept;
  void validate() const;
  bool operator==(const NoiseSpec&) const = default;
};

// Weak regime: eta = c * fGn_H.
std::vector<double> gen_weak_noise(const NoiseSpec& spec, std::size_t n, Seed seed);

struct XiSample {
  std::vector<double> raw;     // xi_0..xi_n as constructed
  std::vector<double> levels;  // raw shifted so that xi_0 = 0
  std::vector<double> eta;     // eta_1..eta_n, eta_k = xi_k - xi_{k-1}
};

// Strong and standard regimes. Leverage constructions read driver[k] for
// xi_k (the driver value of duration k + 1), so driver needs n + 1 entries.
XiSample gen_xi(const NoiseSpec& spec, std::span<const double> driver, std::size_t n, Seed seed);

// Noise for any regime: eta_1..eta_n and the level sequence with xi_0 = 0
// (partial sums of eta in the weak regime).
XiSample gen_noise(const NoiseSpec& spec, std::span<const double> driver, std::size_t n, Seed seed);

// Leverage constants for xi = scale * (a H2(Y) + b H3(Y)) with
// tau = eps exp(sigma Y): m = E[xi_k tau_{k+1}] and mu* = lambda m.
struct LeverageConstants {
  double m = 0.0;
  double mu_star = 0.0;
};
LeverageConstants leverage_constants(XiConstruction c, double sigma, double scale = 1.0,
                                     double hermite_weight = kHermite23Weight);

// Coefficient of Y in the Hermite expansion of (xi - mu*) tau for
// xi = H2 + b H3: exp(sigma^2 / 2) (2 sigma + 3 b sigma^2), times scale.
// Nonzero means int (xi_{N(s)} - mu*) ds inherits the driver's memory;
// b = -2 / (3 sigma) cancels it.
double leverage_memory_coefficient(XiConstruction c, double sigma, double scale = 1.0,
                                   double hermite_weight = kHermite23Weight);

// Terms of y1(t) - theta y2(t) at one sample time.
struct CointErrorTerms {
  double time = 0.0;
  double efficient1 = 0.0;  // sum_{k = N1(t_{2,N2(t)}) + 1}^{N1(t)} e_{1,k}
  double efficient2 = 0.0;  // -theta sum_{k = N2(t_{1,N1(t)}) + 1}^{N2(t)} e_{2,k}
  double noise1 = 0.0;      // xi_{1,N1(t)} - xi_{1,0}
  double noise2 = 0.0;      // -theta (xi_{2,N2(t)} - xi_{2,0})
  double total() const noexcept { return efficient1 + efficient2 + noise1 + noise2; }
};

struct CointInputs {
  const EventClock* clock1 = nullptr;
  const EventClock* clock2 = nullptr;
  std::span<const double> e1, e2;    // e_{i,1..}
  std::span<const double> xi1, xi2;  // xi_{i,0..}
};

// Evaluates the decomposition at each sample time and checks it against the
// observed y1(t) - theta y2(t). Throws ConsistencyError on a mismatch above
// 1e-9 (relative to the magnitude of the terms).
std::vector<CointErrorTerms> coint_error_decomposition(const CointInputs& in, double theta,
                                                       std::span<const double> times,
                                                       std::span<const double> y1,
                                                       std::span<const double> y2);

}  // namespace tickcoint
