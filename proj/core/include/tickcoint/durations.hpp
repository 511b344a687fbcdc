#pragma once

// Stationary duration sequences: LMSD, ACD and iid.

#include <cstddef>
#include <string>
#include <vector>

#include "tickcoint/fracgauss.hpp"
#include "tickcoint/random.hpp"

namespace tickcoint {

// Unit-mean positive innovation laws. `degenerate` is the constant 1.
enum class InnovationLaw { kExponential, kUnitLognormal, kDegenerate };

std::string to_string(InnovationLaw law);
InnovationLaw innovation_law_from_string(const std::string& name);

// Log-scale of the unit-mean lognormal law: exp(s Z - s^2 / 2).
inline constexpr double kLognormalLogScale = 1.0;

double draw_innovation(InnovationLaw law, Rng& rng);

// tau_k = eps_k exp(sigma Y_k), Y a unit-variance stationary Gaussian driver.
struct LmsdSpec {
  double sigma = 1.0;
  GaussianSpec driver = GaussianSpec::long_memory(0.7, 0.5, 1);
  InnovationLaw innovation = InnovationLaw::kExponential;
  std::size_t length = 1;

  // lambda = 1 / (E[eps] exp(sigma^2 / 2)).
  double intensity() const;
  void validate() const;

  bool operator==(const LmsdSpec&) const = default;
};

struct LmsdSample {
  std::vector<double> durations;  // tau_1..tau_n
  // Y_1..Y_{n+1}; durations[k] uses driver[k]. The trailing value lets noise
  // constructions tied to the next duration reach index n.
  std::vector<double> driver;
};

LmsdSample gen_lmsd(const LmsdSpec& spec, Seed seed);

// tau_k = psi_k eps_k, psi_k = omega + alpha tau_{k-1} + beta psi_{k-1}.
struct AcdSpec {
  double omega = 0.2;
  double alpha = 0.1;
  double beta = 0.7;
  InnovationLaw innovation = InnovationLaw::kExponential;
  std::size_t burn_in = 10000;
  std::size_t length = 1;
  // User assertion that the moment conditions needed by the strong-regime
  // results hold (E[(beta + alpha eps)^5] < 1 type). Not verified.
  bool assert_moments = false;

  // lambda = (1 - alpha - beta) / omega.
  double intensity() const;
  void validate() const;

  bool operator==(const AcdSpec&) const = default;
};

struct AcdSample {
  std::vector<double> durations;
  std::vector<double> psi;
};

// Recursion started at the stationary mean psi_0 = omega / (1 - alpha - beta);
// burn-in draws are discarded.
AcdSample gen_acd_with_psi(const AcdSpec& spec, Seed seed);
std::vector<double> gen_acd(const AcdSpec& spec, Seed seed);

std::vector<double> gen_iid_durations(InnovationLaw law, std::size_t n, Seed seed, double mean = 1.0);

// Tagged union over the supported duration models, used by the market.
struct DurationModel {
  enum class Kind { kIid, kLmsd, kAcd };

  Kind kind = Kind::kIid;
  InnovationLaw iid_law = InnovationLaw::kExponential;
  double iid_mean = 1.0;
  LmsdSpec lmsd;
  AcdSpec acd;

  static DurationModel poisson(double intensity);
  static DurationModel deterministic(double spacing);
  static DurationModel from_lmsd(LmsdSpec spec);
  static DurationModel from_acd(AcdSpec spec);

  double intensity() const;
  void validate() const;

  bool operator==(const DurationModel&) const = default;
};

std::string to_string(DurationModel::Kind kind);

struct DurationSample {
  std::vector<double> durations;
  std::vector<double> driver;  // LMSD only, length n + 1
};

// n durations from `model` (the length fields inside the model are ignored).
DurationSample gen_durations(const DurationModel& model, std::size_t n, Seed seed);

}  // namespace tickcoint
