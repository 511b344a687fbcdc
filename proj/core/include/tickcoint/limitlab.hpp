#pragma once

// Reference samplers for the limit laws and the Monte Carlo experiment engine.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tickcoint/estimators.hpp"
#include "tickcoint/fracgauss.hpp"
#include "tickcoint/market.hpp"
#include "tickcoint/random.hpp"
#include "tickcoint/stats.hpp"

namespace tickcoint {

enum class FunctionalKind {
  kRatioBBH,     // int B B_H / int B^2
  kRatioBdBH,    // int B dB_H / int B^2
  kTaperWeak,    // sum Re(int h_l dB_H conj(int h_l dB)) / sum |int h_l dB|^2
  kTaperStrong,  // as above with h'_l against dB_H
  kSpurious,     // int B_{1,y} B_{2,y} / int B_{2,y}^2
  kLevels,       // B_{1,y}(1)
};

std::string to_string(FunctionalKind k);
FunctionalKind functional_kind_from_string(const std::string& name);

struct LimitFunctional {
  FunctionalKind kind = FunctionalKind::kRatioBBH;
  double hurst = 0.5;
  double scale = 1.0;
  TaperConfig taper;
  Matrix2 sigma{1.0, 0.0, 0.0, 1.0};  // covariance of B_y
  // Taper kinds: Re(A C) instead of Re(C conj(A)). Spurious: int B_{1,y}^2
  // in the denominator.
  bool display_variant = false;

  void validate() const;
  bool operator==(const LimitFunctional&) const = default;
};

// Parameters entering the scale constants.
struct ScaleParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double var1 = 1.0;  // sigma_{1,e}^2
  double var2 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double theta = 1.0;
  double hurst = 0.5;
  double delta = 1.0;
};

ScaleParams scale_params(const MarketConfig& config, double delta = 1.0);

// theta^{-2} lambda1 sigma1^2 + lambda2 sigma2^2.
double sigma_e2(const ScaleParams& p);
// Weak OLS: sqrt((c1^2 l1^{2H} + theta^2 c2^2 l2^{2H}) / Sigma_e^2); the display
// variant drops theta^2 on the second noise term.
double weak_ols_scale(const ScaleParams& p, bool display = false);
// Weak taper: same numerator; the display variant carries an extra lambda1 in
// the first denominator term.
double weak_taper_scale(const ScaleParams& p, bool display = false);
// Sigma_0 = c1^2 + theta^2 c2^2.
double sigma0(const ScaleParams& p);
// sqrt(Sigma_0 / Sigma_e^2).
double strong_scale(const ScaleParams& p);
// sqrt(delta^{2H} Sigma_0 / Sigma_e^2).
double continuous_strong_scale(const ScaleParams& p);

// Numerator and denominator of one draw, before scaling.
struct FunctionalParts {
  double numerator = 0.0;
  double denominator = 1.0;
};

// Draws one functional value per call on an M-step grid of [0, 1].
class FunctionalSampler {
 public:
  FunctionalSampler(LimitFunctional f, std::size_t grid);
  // scale * numerator / denominator.
  double draw(Rng& rng) const;
  FunctionalParts draw_parts(Rng& rng) const;
  const LimitFunctional& functional() const noexcept { return f_; }
  std::size_t grid() const noexcept { return grid_; }

 private:
  LimitFunctional f_;
  std::size_t grid_;
  std::optional<FbmSampler> fbm_;
  std::vector<Complex> h_;      // h_l(t_{j-1}), row per l
  std::vector<Complex> h_fbm_;  // integrand against dB_H
};

inline constexpr std::size_t kMinReferenceGrid = 4096;

// count iid samples; sample i uses derive_seed(seed, {i}).
std::vector<double> sample_functional(const LimitFunctional& f, std::size_t grid, std::size_t count, Seed seed,
                                      std::size_t workers = 1);

enum class EstimatorId { kOls, kTaper, kCTaper, kSpurious, kPlanted };

std::string to_string(EstimatorId id);
EstimatorId estimator_id_from_string(const std::string& name);

struct ExperimentSpec {
  std::string name = "experiment";
  MarketConfig market;
  EstimatorId estimator = EstimatorId::kOls;
  TaperConfig taper;
  double dt = 1.0;
  double delta = 1.0;
  // Centre of the errors; theta21 when unset, 0 for the spurious estimator.
  std::optional<double> target;
  // scaled_error = n^{scale_exponent} (estimate - target).
  double scale_exponent = 0.0;
  // Planted estimator: estimate = target + n^{planted_rate} Z with Z standard
  // normal, or drawn from planted_law when set.
  double planted_rate = -0.25;
  std::optional<LimitFunctional> planted_law;
  std::size_t planted_grid = kMinReferenceGrid;
  // Abort when more than this fraction of replications fail at some n.
  double max_failure_fraction = 0.01;

  double center() const;
};

// One replication at sample size n. Validation failures of the estimator
// propagate; the engine turns them into NaN rows.
double run_replication(const ExperimentSpec& spec, std::size_t n, Seed seed);

struct ReplicationRow {
  std::string experiment;
  std::size_t n = 0;
  std::size_t rep = 0;
  Seed seed = 0;
  double estimate = 0.0;
  double scaled_error = 0.0;
};

struct SummaryRow {
  std::string experiment;
  std::size_t n = 0;
  double rmse = 0.0;
  double ks_stat = std::numeric_limits<double>::quiet_NaN();
  double ks_p = std::numeric_limits<double>::quiet_NaN();
  double slope = std::numeric_limits<double>::quiet_NaN();
  double slope_se = std::numeric_limits<double>::quiet_NaN();
  double iqr_n_error = 0.0;  // IQR of n (estimate - target)
  std::size_t failures = 0;
};

struct MCReport {
  std::string experiment;
  std::vector<std::size_t> n_grid;
  std::vector<ReplicationRow> rows;
  std::vector<SummaryRow> summary;
  stats::LinearFit rate;            // log RMSE on log n
  double iqr_ratio = 0.0;           // IQR(n_max) / IQR(n_min) of n (estimate - target)
  double iqr_spread = 0.0;          // max / min of that IQR over the grid
  std::size_t reference_grid = 0;   // 0 when no reference was drawn
  std::size_t reference_count = 0;
  std::vector<double> reference;

  // Finite scaled errors at n, in replication order.
  std::vector<double> scaled_errors(std::size_t n) const;
  std::vector<double> estimates(std::size_t n) const;
};

// Replication r at n uses seed derive_seed(master, {n, r}).
MCReport rate_experiment(const ExperimentSpec& spec, std::span<const std::size_t> n_grid, std::size_t reps, Seed seed,
                         std::size_t workers = 1);

MCReport distribution_experiment(const ExperimentSpec& spec, std::span<const std::size_t> n_grid, std::size_t reps,
                                 const LimitFunctional& functional, std::size_t reference_count,
                                 std::size_t reference_grid, Seed seed, std::size_t workers = 1);

// KS between the scaled errors of two grid points of one report.
stats::KsResult ks_between(const MCReport& report, std::size_t n_a, std::size_t n_b);

struct LevelsReport {
  std::vector<LevelsStatistics> stats;
  double max_relative_error = 0.0;  // over entries and n
};

LevelsReport levels_experiment(const MarketConfig& config, std::span<const std::size_t> n_grid, std::size_t reps,
                               Seed seed, std::size_t workers = 1);

std::string replications_csv(const MCReport& report);
std::string summary_csv(const MCReport& report);
std::string levels_csv(const LevelsReport& report);

}  // namespace tickcoint
