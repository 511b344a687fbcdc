#pragma once

// Bivariate pure-jump log-price paths.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tickcoint/clock.hpp"
#include "tickcoint/durations.hpp"
#include "tickcoint/shocks.hpp"

namespace tickcoint {

struct AssetConfig {
  DurationModel durations;
  std::optional<DeformationSpec> deformation;
  EfficientSpec efficient;
  NoiseSpec noise;

  // lambda of the (possibly deformed) clock: lambda_tilde * gamma.
  double intensity() const;
  void validate(const std::string& prefix) const;

  bool operator==(const AssetConfig&) const = default;
};

// y1 = sum_{k <= N1(t)} (e1 + eta1) + theta21 sum_{k <= N2(t_{1,N1(t)})} e2 and
// symmetrically for y2 with theta12. Cointegrated when theta12 = 1 / theta21.
struct MarketConfig {
  double theta21 = 1.0;
  double theta12 = 1.0;
  std::array<AssetConfig, 2> assets{};
  double horizon = 1000.0;

  static MarketConfig cointegrated(double theta, AssetConfig a1, AssetConfig a2, double horizon);
  static MarketConfig spurious(double theta21, double theta12, AssetConfig a1, AssetConfig a2, double horizon);

  bool is_cointegrated() const noexcept;
  double theta() const noexcept { return theta21; }
  void validate() const;

  bool operator==(const MarketConfig&) const = default;
};

// Right-continuous step function. Each jump is stored as its own entry, so
// ties appear as repeated times and the last entry at a time wins.
struct StepPath {
  double origin = 0.0;
  double initial = 0.0;
  std::vector<double> times;
  std::vector<double> values;
  double horizon = 0.0;

  double value_at(double t) const;
};

struct AssetRecord {
  EventClock clock;                // every generated event, some beyond the horizon
  std::vector<double> durations;   // base (undeformed) durations
  std::vector<double> driver;      // LMSD driver, empty otherwise
  std::vector<double> efficient;   // e_1..e_n
  std::vector<double> eta;         // eta_1..eta_n
  std::vector<double> xi;          // xi_0..xi_n with xi_0 = 0
  std::vector<double> xi_raw;      // xi before the xi_0 shift
  std::optional<DeformationSpec> deformation;  // with the realized phase
};

struct MarketSample {
  StepPath y1;
  StepPath y2;
  std::array<AssetRecord, 2> assets;
  // e.g. an asset without any event before the horizon.
  std::vector<std::string> warnings;
};

MarketSample simulate(const MarketConfig& config, Seed seed);

std::vector<double> sample_at(const StepPath& path, std::span<const double> times);
// y(start + j dt) for j = 1..n.
std::vector<double> sample_grid(const StepPath& path, double dt, std::size_t n, std::optional<double> start = {});
// Exact window integrals int_{start + (k-1) delta}^{start + k delta} y(u) du, k = 1..n.
std::vector<double> average_over(const StepPath& path, double delta, std::size_t n, std::optional<double> start = {});

struct Matrix2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  bool operator==(const Matrix2&) const = default;
};

// Closed-form long-run covariance of n^{-1/2} y(n).
Matrix2 levels_covariance(const MarketConfig& config);

struct LevelsStatistics {
  std::size_t n = 0;
  std::size_t reps = 0;
  Matrix2 empirical;
  Matrix2 theoretical;
};

// Empirical covariance of n^{-1/2} (y1(n), y2(n)) over replications. Each
// replication simulates once up to max(n_grid) and is read at every n.
std::vector<LevelsStatistics> levels_fclt_statistics(const MarketConfig& config, std::span<const std::size_t> n_grid,
                                                     std::size_t reps, Seed seed, std::size_t workers = 1);

}  // namespace tickcoint
