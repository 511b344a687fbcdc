#include "tickcoint/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tickcoint/errors.hpp"
#include "tickcoint/parallel.hpp"

namespace tickcoint {

double AssetConfig::intensity() const {
  const double base = durations.intensity();
  return deformation ? base * deformation->gamma() : base;
}

void AssetConfig::validate(const std::string& prefix) const {
  try {
    durations.validate();
    efficient.validate();
    noise.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(e.what(), 0, prefix);
  }
  if (deformation) {
    try {
      deformation->validate();
    } catch (const ConfigError& e) {
      throw ConfigError(e.message(), 0, prefix + "." + e.field());
    }
  }
  if (noise.needs_driver() && durations.kind != DurationModel::Kind::kLmsd)
    throw ConfigError("noise construction '" + to_string(noise.xi) + "' requires LMSD durations", 0,
                      prefix + ".noise.xi");
}

MarketConfig MarketConfig::cointegrated(double theta, AssetConfig a1, AssetConfig a2, double horizon) {
  MarketConfig c;
  c.theta21 = theta;
  c.theta12 = 1.0 / theta;
  c.assets = {std::move(a1), std::move(a2)};
  c.horizon = horizon;
  return c;
}

MarketConfig MarketConfig::spurious(double theta21, double theta12, AssetConfig a1, AssetConfig a2, double horizon) {
  MarketConfig c;
  c.theta21 = theta21;
  c.theta12 = theta12;
  c.assets = {std::move(a1), std::move(a2)};
  c.horizon = horizon;
  return c;
}

bool MarketConfig::is_cointegrated() const noexcept { return theta12 * theta21 == 1.0 || theta12 == 1.0 / theta21; }

void MarketConfig::validate() const {
  if (!std::isfinite(theta21) || !std::isfinite(theta12)) throw ConfigError("weights must be finite", 0, "market.theta");
  if (theta21 == 0.0 && theta12 == 0.0) throw ConfigError("theta must be nonzero", 0, "market.theta");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon must be positive", 0, "market.horizon");
  assets[0].validate("asset1");
  assets[1].validate("asset2");
}

double StepPath::value_at(double t) const {
  if (t < origin || t > horizon) throw RangeError("step path: time " + std::to_string(t) + " outside [origin, horizon]");
  const auto idx = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
  return idx == 0 ? initial : values[idx - 1];
}

namespace {

std::size_t initial_event_count(double intensity, double span) {
  const double mean = intensity * span;
  const double guess = 1.25 * mean + 8.0 * std::sqrt(mean) + 64.0;
  const auto n = static_cast<std::size_t>(std::ceil(guess));
  return (n + 255) / 256 * 256;
}

AssetRecord simulate_asset(const AssetConfig& a, double horizon, Seed seed, std::size_t asset) {
  AssetRecord rec;
  double base_horizon = horizon;
  if (a.deformation) {
    rec.deformation = a.deformation->random_phase
                          ? with_random_phase(*a.deformation, stream_seed(seed, Stream::kDeformation, asset))
                          : *a.deformation;
    base_horizon = (*rec.deformation)(horizon);
  }
  const double lambda = a.durations.intensity();
  std::size_t n = initial_event_count(lambda, base_horizon);
  const Seed dseed = stream_seed(seed, Stream::kDurations, asset);
  for (;;) {
    auto d = gen_durations(a.durations, n, dseed);
    auto clock = EventClock::from_durations(d.durations);
    if (clock.last_time() > base_horizon) {
      rec.durations = std::move(d.durations);
      rec.driver = std::move(d.driver);
      rec.clock = rec.deformation ? deform_clock(clock, *rec.deformation) : std::move(clock);
      break;
    }
    if (n > (std::size_t{1} << 30)) throw ResourceError("simulate: event count exceeds 2^30 before reaching the horizon");
    n *= 2;
  }
  rec.efficient = gen_efficient(a.efficient, n, stream_seed(seed, Stream::kEfficient, asset));
  auto noise = gen_noise(a.noise, rec.driver, n, stream_seed(seed, Stream::kNoise, asset));
  rec.eta = std::move(noise.eta);
  rec.xi = std::move(noise.levels);
  rec.xi_raw = std::move(noise.raw);
  return rec;
}

StepPath build_path(const AssetRecord& own, const AssetRecord& other, double weight, double horizon) {
  StepPath p;
  p.horizon = horizon;
  const auto& t_own = own.clock.times();
  const auto& t_other = other.clock.times();
  const std::size_t n = own.clock.count(horizon);
  p.times.reserve(n);
  p.values.reserve(n);
  double own_sum = 0.0;
  double cross_sum = 0.0;
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < n; ++k) {
    own_sum += own.efficient[k] + own.eta[k];
    // N_other(t_own,k) counts ties with the current event.
    while (cursor < t_other.size() && t_other[cursor] <= t_own[k]) cross_sum += other.efficient[cursor++];
    p.times.push_back(t_own[k]);
    p.values.push_back(own_sum + weight * cross_sum);
  }
  return p;
}

}  // namespace

MarketSample simulate(const MarketConfig& config, Seed seed) {
  config.validate();
  MarketSample s;
  for (std::size_t i = 0; i < 2; ++i) s.assets[i] = simulate_asset(config.assets[i], config.horizon, seed, i);
  s.y1 = build_path(s.assets[0], s.assets[1], config.theta21, config.horizon);
  s.y2 = build_path(s.assets[1], s.assets[0], config.theta12, config.horizon);
  if (s.y1.times.empty()) s.warnings.push_back("degenerate path: asset 1 has no event before the horizon");
  if (s.y2.times.empty()) s.warnings.push_back("degenerate path: asset 2 has no event before the horizon");
  return s;
}

std::vector<double> sample_at(const StepPath& path, std::span<const double> times) {
  std::vector<double> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) out[j] = path.value_at(times[j]);
  return out;
}

std::vector<double> sample_grid(const StepPath& path, double dt, std::size_t n, std::optional<double> start) {
  if (!(dt > 0.0)) throw ParameterError("sample grid: dt must be positive");
  const double s = start.value_or(path.origin);
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = s + static_cast<double>(j + 1) * dt;
  return sample_at(path, t);
}

std::vector<double> average_over(const StepPath& path, double delta, std::size_t n, std::optional<double> start) {
  if (!(delta > 0.0)) throw ParameterError("average_over: delta must be positive");
  const double s = start.value_or(path.origin);
  if (s < path.origin) throw RangeError("average_over: start precedes the path origin");
  const double end = s + static_cast<double>(n) * delta;
  if (end > path.horizon * (1.0 + 1e-12) + 1e-12)
    throw RangeError("average_over: n * delta exceeds the path horizon");
  std::vector<double> out(n);
  std::size_t idx = 0;
  double cur = path.initial;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = s + static_cast<double>(k) * delta;
    const double b = s + static_cast<double>(k + 1) * delta;
    while (idx < path.times.size() && path.times[idx] <= a) cur = path.values[idx++];
    double pos = a;
    double acc = 0.0;
    while (idx < path.times.size() && path.times[idx] < b) {
      acc += cur * (path.times[idx] - pos);
      pos = path.times[idx];
      cur = path.values[idx++];
    }
    acc += cur * (b - pos);
    out[k] = acc;
  }
  return out;
}

Matrix2 levels_covariance(const MarketConfig& config) {
  const double l1 = config.assets[0].intensity();
  const double l2 = config.assets[1].intensity();
  const double v1 = config.assets[0].efficient.variance;
  const double v2 = config.assets[1].efficient.variance;
  Matrix2 m;
  m.a11 = l1 * v1 + config.theta21 * config.theta21 * l2 * v2;
  m.a22 = config.theta12 * config.theta12 * l1 * v1 + l2 * v2;
  m.a12 = config.theta12 * l1 * v1 + config.theta21 * l2 * v2;
  m.a21 = m.a12;
  return m;
}

std::vector<LevelsStatistics> levels_fclt_statistics(const MarketConfig& config, std::span<const std::size_t> n_grid,
                                                     std::size_t reps, Seed seed, std::size_t workers) {
  if (n_grid.empty()) throw InputError("levels statistics: empty n grid");
  if (reps < 2) throw InputError("levels statistics: need at least two replications");
  const std::size_t n_max = *std::max_element(n_grid.begin(), n_grid.end());
  MarketConfig cfg = config;
  cfg.horizon = static_cast<double>(n_max);
  cfg.validate();
  const std::size_t g = n_grid.size();
  std::vector<double> v1(reps * g), v2(reps * g);
  parallel_for(reps, workers, [&](std::size_t rep) {
    const auto sim = simulate(cfg, derive_seed(seed, {rep}));
    for (std::size_t i = 0; i < g; ++i) {
      const double n = static_cast<double>(n_grid[i]);
      v1[rep * g + i] = sim.y1.value_at(n) / std::sqrt(n);
      v2[rep * g + i] = sim.y2.value_at(n) / std::sqrt(n);
    }
  });
  const Matrix2 theory = levels_covariance(config);
  std::vector<LevelsStatistics> out;
  for (std::size_t i = 0; i < g; ++i) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      m1 += v1[r * g + i];
      m2 += v2[r * g + i];
    }
    m1 /= static_cast<double>(reps);
    m2 /= static_cast<double>(reps);
    double s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double d1 = v1[r * g + i] - m1;
      const double d2 = v2[r * g + i] - m2;
      s11 += d1 * d1;
      s22 += d2 * d2;
      s12 += d1 * d2;
    }
    const double denom = static_cast<double>(reps - 1);
    LevelsStatistics st;
    st.n = n_grid[i];
    st.reps = reps;
    st.empirical = {s11 / denom, s12 / denom, s12 / denom, s22 / denom};
    st.theoretical = theory;
    out.push_back(st);
  }
  return out;
}

}  // namespace tickcoint
