#pragma once

// Run configuration: sectioned key = value text with '#' comments.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tickcoint/estimators.hpp"
#include "tickcoint/limitlab.hpp"
#include "tickcoint/market.hpp"

namespace tickcoint {

enum class MarketMode { kCointegrated, kSpurious };

struct EstimatorSection {
  std::string name = "ols";  // ols | taper | ctaper | spurious | gph
  TaperConfig taper;
  double dt = 1.0;
  double delta = 1.0;
  std::size_t gph_bandwidth = 0;  // 0: floor(sqrt(n))

  bool operator==(const EstimatorSection&) const = default;
};

struct ExperimentSection {
  std::string name = "experiment";
  EstimatorId estimator = EstimatorId::kOls;
  std::vector<std::size_t> n_grid;
  std::size_t reps = 500;
  std::optional<double> target;
  std::optional<double> scale_exponent;  // unset: implied by the functional
  FunctionalKind functional = FunctionalKind::kRatioBBH;
  std::optional<double> functional_hurst;  // unset: implied by asset 1
  std::optional<double> functional_scale;  // unset: closed-form constant
  bool functional_display = false;
  std::size_t reference_count = 10000;
  std::size_t reference_grid = kMinReferenceGrid;
  double planted_rate = -0.25;
  bool planted_from_functional = false;
  double max_failure_fraction = 0.01;

  bool operator==(const ExperimentSection&) const = default;
};

struct RunSection {
  std::string output = "out";
  Seed seed = 1;
  std::size_t workers = 0;  // 0: TICKCOINT_WORKERS or hardware concurrency

  bool operator==(const RunSection&) const = default;
};

struct RunConfig {
  MarketMode mode = MarketMode::kCointegrated;
  MarketConfig market;
  EstimatorSection estimator;
  ExperimentSection experiment;
  RunSection run;

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError with a line number for syntax problems and with a field
// path for constraint violations.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
// Every field is written, so parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// Non-fatal advisories, e.g. ACD durations in a strong or standard regime
// without asserted moment conditions.
std::vector<std::string> config_warnings(const RunConfig& config);

// Hurst index of the limit functional implied by the configuration.
double implied_hurst(const RunConfig& config);
LimitFunctional resolve_functional(const RunConfig& config);
ExperimentSpec experiment_spec(const RunConfig& config);

}  // namespace tickcoint
