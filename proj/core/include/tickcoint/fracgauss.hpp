#pragma once

// Stationary Gaussian sequences with prescribed autocovariance, fractional
// Gaussian noise and fractional Brownian motion, Hermite polynomials.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tickcoint/random.hpp"

namespace tickcoint {

// Autocovariance description of a zero-mean, unit-variance stationary
// Gaussian sequence.
struct GaussianSpec {
  enum class Kind { kLongMemory, kSummable };

  Kind kind = Kind::kSummable;
  // Long-memory case: rho(k) = scale * k^(2 hurst - 2) for k >= 1.
  double hurst = 0.5;
  double scale = 0.0;
  // Summable case: rho(0), rho(1), ...; zero past the end. rho(0) must be 1.
  std::vector<double> acvf{1.0};
  std::size_t length = 1;

  static GaussianSpec long_memory(double hurst, double c, std::size_t n);
  static GaussianSpec summable(std::vector<double> acvf, std::size_t n);
  static GaussianSpec white(std::size_t n);

  double autocovariance(std::size_t lag) const;
  // Throws ParameterError on an invalid spec.
  void validate() const;

  bool operator==(const GaussianSpec&) const = default;
};

// Exact sampler for a stationary Gaussian sequence of fixed length. Uses
// circulant embedding (Davies-Harte) padded to a power of two, and falls back
// to a dense Cholesky factor for short sequences whose embedding is not
// nonnegative definite. Construction does the spectral work once; sample() is
// const and may be called concurrently with distinct generators.
class StationaryGaussianSampler {
 public:
  static constexpr std::size_t kCholeskyLimit = 4096;
  static constexpr double kEigenTolerance = 1e-10;

  StationaryGaussianSampler(const std::function<double(std::size_t)>& acvf, std::size_t n);

  std::vector<double> sample(Rng& rng) const;

  std::size_t size() const noexcept { return n_; }
  bool uses_circulant() const noexcept { return !sqrt_eigen_.empty(); }
  std::size_t embedding_size() const noexcept { return sqrt_eigen_.size(); }

 private:
  std::size_t n_;
  std::vector<double> sqrt_eigen_;  // scaled by 1/sqrt(m)
  std::vector<double> cholesky_;    // row-major lower triangle, n x n
};

std::vector<double> gen_long_memory_gaussian(const GaussianSpec& spec, Seed seed);

// Autocovariance of unit-variance fractional Gaussian noise.
double fgn_autocovariance(double hurst, std::size_t lag);
// cov(B_H(s), B_H(t)).
double fbm_covariance(double hurst, double s, double t);

// n steps of unit-variance fGn (increments of B_H at integer times).
std::vector<double> gen_fgn(double hurst, std::size_t n, Seed seed);

struct FbmGrid {
  double hurst = 0.5;
  std::vector<double> times;   // t_0 = 0 < t_1 < ... < t_M
  std::vector<double> values;  // B_H(t_j), values[0] = 0
};

// Reusable FBM sampler on the uniform grid j * horizon / steps.
class FbmSampler {
 public:
  FbmSampler(double hurst, std::size_t steps, double horizon = 1.0);

  FbmGrid sample(Rng& rng) const;
  // Increments only (length steps); cheaper when the levels are not needed.
  std::vector<double> sample_increments(Rng& rng) const;

  double hurst() const noexcept { return hurst_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  double hurst_;
  std::size_t steps_;
  double horizon_;
  double step_scale_;
  StationaryGaussianSampler fgn_;
};

// Exact FBM sample at arbitrary grid points. Uniform grids go through
// circulant embedding of fGn; other grids through a dense Cholesky factor
// (at most StationaryGaussianSampler::kCholeskyLimit points).
FbmGrid gen_fbm(double hurst, std::span<const double> times, Seed seed);

std::vector<double> fbm_increments(const FbmGrid& fbm);

// Probabilists' Hermite polynomials He_2(x) = x^2 - 1, He_3(x) = x^3 - 3x.
double hermite(int k, double x);

}  // namespace tickcoint
