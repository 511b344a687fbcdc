#include "tickcoint/limitlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tickcoint/csv.hpp"
#include "tickcoint/errors.hpp"
#include "tickcoint/parallel.hpp"

namespace tickcoint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool uses_fbm(FunctionalKind k) {
  return k == FunctionalKind::kRatioBBH || k == FunctionalKind::kRatioBdBH || k == FunctionalKind::kTaperWeak ||
         k == FunctionalKind::kTaperStrong;
}

bool is_taper(FunctionalKind k) { return k == FunctionalKind::kTaperWeak || k == FunctionalKind::kTaperStrong; }

}  // namespace

std::string to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::kRatioBBH:
      return "ratio-BBH";
    case FunctionalKind::kRatioBdBH:
      return "ratio-BdBH";
    case FunctionalKind::kTaperWeak:
      return "taper-weak";
    case FunctionalKind::kTaperStrong:
      return "taper-strong";
    case FunctionalKind::kSpurious:
      return "spurious";
    case FunctionalKind::kLevels:
      return "levels";
  }
  return "ratio-BBH";
}

FunctionalKind functional_kind_from_string(const std::string& name) {
  for (auto k : {FunctionalKind::kRatioBBH, FunctionalKind::kRatioBdBH, FunctionalKind::kTaperWeak,
                 FunctionalKind::kTaperStrong, FunctionalKind::kSpurious, FunctionalKind::kLevels})
    if (to_string(k) == name) return k;
  throw ParameterError("unknown functional '" + name +
                       "' (expected ratio-BBH, ratio-BdBH, taper-weak, taper-strong, spurious, levels)");
}

void LimitFunctional::validate() const {
  if (!std::isfinite(scale)) throw ParameterError("functional: scale must be finite");
  if (uses_fbm(kind) && !(hurst > 0.0 && hurst < 1.0)) throw ParameterError("functional: H must lie in (0, 1)");
  if (is_taper(kind) && taper.m < 1) throw ParameterError("functional: m must be >= 1");
  if (kind == FunctionalKind::kSpurious || kind == FunctionalKind::kLevels) {
    if (!(sigma.a11 > 0.0) || !(sigma.a22 > 0.0) || sigma.a12 != sigma.a21)
      throw ParameterError("functional: covariance must be symmetric with positive diagonal");
    if (sigma.a11 * sigma.a22 - sigma.a12 * sigma.a12 < -1e-12 * sigma.a11 * sigma.a22)
      throw ParameterError("functional: covariance is not positive semidefinite");
  }
}

ScaleParams scale_params(const MarketConfig& config, double delta) {
  ScaleParams p;
  p.lambda1 = config.assets[0].intensity();
  p.lambda2 = config.assets[1].intensity();
  p.var1 = config.assets[0].efficient.variance;
  p.var2 = config.assets[1].efficient.variance;
  p.c1 = config.assets[0].noise.scale;
  p.c2 = config.assets[1].noise.scale;
  p.theta = config.theta21;
  p.hurst = config.assets[0].noise.hurst;
  p.delta = delta;
  return p;
}

double sigma_e2(const ScaleParams& p) { return p.lambda1 * p.var1 / (p.theta * p.theta) + p.lambda2 * p.var2; }

namespace {

double weak_numerator(const ScaleParams& p, double theta_factor) {
  return p.c1 * p.c1 * std::pow(p.lambda1, 2.0 * p.hurst) +
         theta_factor * p.c2 * p.c2 * std::pow(p.lambda2, 2.0 * p.hurst);
}

}  // namespace

double weak_ols_scale(const ScaleParams& p, bool display) {
  return std::sqrt(weak_numerator(p, display ? 1.0 : p.theta * p.theta) / sigma_e2(p));
}

double weak_taper_scale(const ScaleParams& p, bool display) {
  const double den =
      display ? p.lambda1 * p.lambda1 * p.var1 / (p.theta * p.theta) + p.lambda2 * p.var2 : sigma_e2(p);
  return std::sqrt(weak_numerator(p, p.theta * p.theta) / den);
}

double sigma0(const ScaleParams& p) { return p.c1 * p.c1 + p.theta * p.theta * p.c2 * p.c2; }

double strong_scale(const ScaleParams& p) { return std::sqrt(sigma0(p) / sigma_e2(p)); }

double continuous_strong_scale(const ScaleParams& p) {
  return std::sqrt(std::pow(p.delta, 2.0 * p.hurst) * sigma0(p) / sigma_e2(p));
}

FunctionalSampler::FunctionalSampler(LimitFunctional f, std::size_t grid) : f_(std::move(f)), grid_(grid) {
  f_.validate();
  if (grid_ < kMinReferenceGrid)
    throw ParameterError("functional sampler: grid must have at least " + std::to_string(kMinReferenceGrid) +
                         " steps");
  if (uses_fbm(f_.kind)) fbm_.emplace(f_.hurst, grid_);
  if (is_taper(f_.kind)) {
    const std::size_t m = f_.taper.m;
    h_.resize(m * grid_);
    h_fbm_.resize(m * grid_);
    for (std::size_t l = 1; l <= m; ++l) {
      for (std::size_t j = 0; j < grid_; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(grid_);
        h_[(l - 1) * grid_ + j] = f_.taper.taper.h_ell(l, t);
        h_fbm_[(l - 1) * grid_ + j] = f_.kind == FunctionalKind::kTaperStrong ? f_.taper.taper.h_ell_prime(l, t)
                                                                              : f_.taper.taper.h_ell(l, t);
      }
    }
  }
}

double FunctionalSampler::draw(Rng& rng) const {
  const auto p = draw_parts(rng);
  return f_.scale * p.numerator / p.denominator;
}

FunctionalParts FunctionalSampler::draw_parts(Rng& rng) const {
  const std::size_t M = grid_;
  const double dt = 1.0 / static_cast<double>(M);
  const double sd = std::sqrt(dt);
  std::normal_distribution<double> normal;

  if (f_.kind == FunctionalKind::kLevels) return {std::sqrt(f_.sigma.a11) * normal(rng), 1.0};

  std::vector<double> dB(M);
  for (auto& v : dB) v = sd * normal(rng);

  if (f_.kind == FunctionalKind::kSpurious) {
    std::vector<double> dW(M);
    for (auto& v : dW) v = sd * normal(rng);
    const double l11 = std::sqrt(f_.sigma.a11);
    const double l21 = f_.sigma.a12 / l11;
    const double l22 = std::sqrt(std::max(0.0, f_.sigma.a22 - l21 * l21));
    double b1 = 0.0, b2 = 0.0, cross = 0.0, s11 = 0.0, s22 = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      b1 += l11 * dB[j];
      b2 += l21 * dB[j] + l22 * dW[j];
      cross += b1 * b2;
      s11 += b1 * b1;
      s22 += b2 * b2;
    }
    return {cross * dt, (f_.display_variant ? s11 : s22) * dt};
  }

  const auto dBH = fbm_->sample_increments(rng);

  switch (f_.kind) {
    case FunctionalKind::kRatioBBH: {
      double b = 0.0, bh = 0.0, num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        b += dB[j];
        bh += dBH[j];
        num += b * bh;
        den += b * b;
      }
      return {num * dt, den * dt};
    }
    case FunctionalKind::kRatioBdBH: {
      // int B dB_H = B(1) B_H(1) - int B_H dB.
      double b = 0.0, bh = 0.0, bh_db = 0.0, den = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        bh_db += bh * dB[j];
        b += dB[j];
        bh += dBH[j];
        den += b * b;
      }
      return {b * bh - bh_db, den * dt};
    }
    case FunctionalKind::kTaperWeak:
    case FunctionalKind::kTaperStrong: {
      double num = 0.0, den = 0.0;
      for (std::size_t l = 0; l < f_.taper.m; ++l) {
        Complex a = 0.0, c = 0.0;
        const Complex* h = h_.data() + l * M;
        const Complex* g = h_fbm_.data() + l * M;
        for (std::size_t j = 0; j < M; ++j) {
          a += h[j] * dB[j];
          c += g[j] * dBH[j];
        }
        num += f_.display_variant ? (a * c).real() : (c * std::conj(a)).real();
        den += std::norm(a);
      }
      return {num, den};
    }
    default:
      break;
  }
  return {kNaN, 1.0};
}

std::vector<double> sample_functional(const LimitFunctional& f, std::size_t grid, std::size_t count, Seed seed,
                                      std::size_t workers) {
  const FunctionalSampler sampler(f, grid);
  std::vector<double> out(count);
  parallel_for(count, workers, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(seed, {i}));
    out[i] = sampler.draw(rng);
  });
  return out;
}

std::string to_string(EstimatorId id) {
  switch (id) {
    case EstimatorId::kOls:
      return "ols";
    case EstimatorId::kTaper:
      return "taper";
    case EstimatorId::kCTaper:
      return "ctaper";
    case EstimatorId::kSpurious:
      return "spurious";
    case EstimatorId::kPlanted:
      return "planted";
  }
  return "ols";
}

EstimatorId estimator_id_from_string(const std::string& name) {
  for (auto id : {EstimatorId::kOls, EstimatorId::kTaper, EstimatorId::kCTaper, EstimatorId::kSpurious,
                  EstimatorId::kPlanted})
    if (to_string(id) == name) return id;
  throw ParameterError("unknown estimator '" + name + "' (expected ols, taper, ctaper, spurious, planted)");
}

double ExperimentSpec::center() const {
  if (target) return *target;
  return estimator == EstimatorId::kSpurious ? 0.0 : market.theta21;
}

double run_replication(const ExperimentSpec& spec, std::size_t n, Seed seed) {
  if (spec.estimator == EstimatorId::kPlanted) {
    Rng rng = make_rng(seed);
    double z = 0.0;
    if (spec.planted_law) {
      const FunctionalSampler sampler(*spec.planted_law, spec.planted_grid);
      z = sampler.draw(rng);
    } else {
      z = std::normal_distribution<double>()(rng);
    }
    return spec.center() + std::pow(static_cast<double>(n), spec.planted_rate) * z;
  }
  MarketConfig cfg = spec.market;
  const bool continuous = spec.estimator == EstimatorId::kCTaper;
  cfg.horizon = static_cast<double>(n) * (continuous ? spec.delta : spec.dt);
  const auto sim = simulate(cfg, seed);
  if (continuous) return ctaper_theta(sim.y1, sim.y2, spec.delta, spec.taper);
  const auto y1 = sample_grid(sim.y1, spec.dt, n);
  const auto y2 = sample_grid(sim.y2, spec.dt, n);
  switch (spec.estimator) {
    case EstimatorId::kOls:
      return ols_theta(y1, y2);
    case EstimatorId::kSpurious:
      return spurious_delta(y1, y2);
    case EstimatorId::kTaper:
      return taper_theta(y1, y2, spec.taper, sim.y1.initial, sim.y2.initial);
    default:
      break;
  }
  throw ParameterError("run_replication: unsupported estimator");
}

std::vector<double> MCReport::scaled_errors(std::size_t n) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.n == n && std::isfinite(r.scaled_error)) out.push_back(r.scaled_error);
  return out;
}

std::vector<double> MCReport::estimates(std::size_t n) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.n == n && std::isfinite(r.estimate)) out.push_back(r.estimate);
  return out;
}

namespace {

void check_grid(std::span<const std::size_t> n_grid, std::size_t reps, bool geometric) {
  if (n_grid.empty() || (geometric && n_grid.size() < 2))
    throw InputError(geometric ? "experiment: n grid needs at least two points" : "experiment: empty n grid");
  if (reps < 2) throw InputError("experiment: need at least two replications per n");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw InputError("experiment: n grid must be strictly increasing");
  if (n_grid.front() < 2) throw InputError("experiment: n must be >= 2");
  if (!geometric) return;
  const double r0 = static_cast<double>(n_grid[1]) / static_cast<double>(n_grid[0]);
  for (std::size_t i = 2; i < n_grid.size(); ++i) {
    const double r = static_cast<double>(n_grid[i]) / static_cast<double>(n_grid[i - 1]);
    if (std::abs(r - r0) > 1e-9 * r0) throw InputError("experiment: n grid must be geometric");
  }
}

MCReport run_grid(const ExperimentSpec& spec, std::span<const std::size_t> n_grid, std::size_t reps, Seed seed,
                  std::size_t workers, bool geometric) {
  check_grid(n_grid, reps, geometric);
  MCReport rep;
  rep.experiment = spec.name;
  rep.n_grid.assign(n_grid.begin(), n_grid.end());
  const std::size_t g = n_grid.size();
  rep.rows.resize(g * reps);
  const double center = spec.center();
  // Market validation is done once so that configuration errors stay fatal.
  if (spec.estimator != EstimatorId::kPlanted) spec.market.validate();
  if (spec.planted_law) spec.planted_law->validate();

  parallel_for(g * reps, workers, [&](std::size_t idx) {
    const std::size_t i = idx / reps;
    const std::size_t r = idx % reps;
    const std::size_t n = n_grid[i];
    ReplicationRow& row = rep.rows[idx];
    row.experiment = spec.name;
    row.n = n;
    row.rep = r;
    row.seed = derive_seed(seed, {n, r});
    try {
      row.estimate = run_replication(spec, n, row.seed);
    } catch (const ValidationError&) {
      row.estimate = kNaN;
    }
    row.scaled_error = std::pow(static_cast<double>(n), spec.scale_exponent) * (row.estimate - center);
  });

  std::vector<double> log_n, log_rmse;
  for (std::size_t i = 0; i < g; ++i) {
    SummaryRow s;
    s.experiment = spec.name;
    s.n = n_grid[i];
    std::vector<double> err, nerr;
    for (std::size_t r = 0; r < reps; ++r) {
      const double e = rep.rows[i * reps + r].estimate;
      if (!std::isfinite(e)) {
        ++s.failures;
        continue;
      }
      err.push_back(e - center);
      nerr.push_back(static_cast<double>(s.n) * (e - center));
    }
    if (static_cast<double>(s.failures) > spec.max_failure_fraction * static_cast<double>(reps))
      throw ExperimentAborted("experiment '" + spec.name + "': " + std::to_string(s.failures) + " of " +
                              std::to_string(reps) + " replications failed at n = " + std::to_string(s.n));
    if (err.size() < 2)
      throw ExperimentAborted("experiment '" + spec.name + "': too few successful replications at n = " +
                              std::to_string(s.n));
    s.rmse = stats::rms(err);
    s.iqr_n_error = stats::iqr(nerr);
    if (s.rmse > 0.0) {
      log_n.push_back(std::log(static_cast<double>(s.n)));
      log_rmse.push_back(std::log(s.rmse));
    }
    rep.summary.push_back(s);
  }
  if (log_n.size() >= 3) {
    rep.rate = stats::fit_line(log_n, log_rmse);
    for (auto& s : rep.summary) {
      s.slope = rep.rate.slope;
      s.slope_se = rep.rate.slope_se;
    }
  }
  double lo = INFINITY, hi = 0.0;
  for (const auto& s : rep.summary) {
    lo = std::min(lo, s.iqr_n_error);
    hi = std::max(hi, s.iqr_n_error);
  }
  const double first = rep.summary.front().iqr_n_error;
  rep.iqr_ratio = first > 0.0 ? rep.summary.back().iqr_n_error / first : kNaN;
  rep.iqr_spread = lo > 0.0 ? hi / lo : kNaN;
  return rep;
}

}  // namespace

MCReport rate_experiment(const ExperimentSpec& spec, std::span<const std::size_t> n_grid, std::size_t reps, Seed seed,
                         std::size_t workers) {
  return run_grid(spec, n_grid, reps, seed, workers, true);
}

MCReport distribution_experiment(const ExperimentSpec& spec, std::span<const std::size_t> n_grid, std::size_t reps,
                                 const LimitFunctional& functional, std::size_t reference_count,
                                 std::size_t reference_grid, Seed seed, std::size_t workers) {
  if (reference_count < 2) throw InputError("distribution experiment: need at least two reference samples");
  functional.validate();
  MCReport rep = run_grid(spec, n_grid, reps, seed, workers, false);
  rep.reference_grid = reference_grid;
  rep.reference_count = reference_count;
  rep.reference =
      sample_functional(functional, reference_grid, reference_count, stream_seed(seed, Stream::kReference), workers);
  for (auto& s : rep.summary) {
    const auto ks = stats::ks_two_sample(rep.scaled_errors(s.n), rep.reference);
    s.ks_stat = ks.statistic;
    s.ks_p = ks.p_value;
  }
  return rep;
}

stats::KsResult ks_between(const MCReport& report, std::size_t n_a, std::size_t n_b) {
  const auto a = report.scaled_errors(n_a);
  const auto b = report.scaled_errors(n_b);
  if (a.empty() || b.empty()) throw InputError("ks_between: n not present in the report");
  return stats::ks_two_sample(a, b);
}

LevelsReport levels_experiment(const MarketConfig& config, std::span<const std::size_t> n_grid, std::size_t reps,
                               Seed seed, std::size_t workers) {
  LevelsReport out;
  out.stats = levels_fclt_statistics(config, n_grid, reps, seed, workers);
  for (const auto& s : out.stats) {
    const std::array<std::pair<double, double>, 3> pairs{{{s.empirical.a11, s.theoretical.a11},
                                                          {s.empirical.a12, s.theoretical.a12},
                                                          {s.empirical.a22, s.theoretical.a22}}};
    for (const auto& [e, t] : pairs)
      if (t != 0.0) out.max_relative_error = std::max(out.max_relative_error, std::abs(e - t) / std::abs(t));
  }
  return out;
}

std::string replications_csv(const MCReport& report) {
  csv::Writer w({"experiment", "n", "rep", "seed", "estimate", "scaled_error"});
  for (const auto& r : report.rows)
    w.field(r.experiment)
        .field(r.n)
        .field(r.rep)
        .field(std::string_view(std::to_string(r.seed)))
        .field(r.estimate)
        .field(r.scaled_error)
        .end_row();
  return w.str();
}

std::string summary_csv(const MCReport& report) {
  csv::Writer w({"experiment", "n", "rmse", "ks_stat", "ks_p", "slope", "slope_se"});
  for (const auto& s : report.summary)
    w.field(s.experiment).field(s.n).field(s.rmse).field(s.ks_stat).field(s.ks_p).field(s.slope).field(s.slope_se).end_row();
  return w.str();
}

std::string levels_csv(const LevelsReport& report) {
  csv::Writer w({"n", "reps", "entry", "empirical", "theoretical"});
  for (const auto& s : report.stats) {
    const std::array<std::tuple<const char*, double, double>, 3> rows{{{"s11", s.empirical.a11, s.theoretical.a11},
                                                                       {"s12", s.empirical.a12, s.theoretical.a12},
                                                                       {"s22", s.empirical.a22, s.theoretical.a22}}};
    for (const auto& [name, e, t] : rows) w.field(s.n).field(s.reps).field(std::string_view(name)).field(e).field(t).end_row();
  }
  return w.str();
}

}  // namespace tickcoint
