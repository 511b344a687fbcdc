// Acceptance criteria 1-11. Each criterion prints one PASS/FAIL line.
// Usage: acceptance [id ...]   (ids: 1 2 3 4 5 6 7 7b 8 9 10 11; default all)

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tickcoint/clock.hpp"
#include "tickcoint/durations.hpp"
#include "tickcoint/estimators.hpp"
#include "tickcoint/fracgauss.hpp"
#include "tickcoint/limitlab.hpp"
#include "tickcoint/market.hpp"
#include "tickcoint/parallel.hpp"
#include "tickcoint/shocks.hpp"
#include "tickcoint/stats.hpp"

using namespace tickcoint;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream o;
  o.precision(prec);
  o << v;
  return o.str();
}

std::size_t workers() { return default_workers(); }

AssetConfig poisson_asset(double lambda, double var) {
  AssetConfig a;
  a.durations = DurationModel::poisson(lambda);
  a.efficient.variance = var;
  return a;
}

AssetConfig weak_asset(double c, double h) {
  AssetConfig a = poisson_asset(1.0, 1.0);
  a.noise.regime = NoiseRegime::kWeak;
  a.noise.hurst = h;
  a.noise.scale = c;
  return a;
}

AssetConfig lmsd_leverage_asset(XiConstruction xi, NoiseRegime regime, double scale) {
  AssetConfig a;
  LmsdSpec l;
  l.sigma = 1.0;
  l.driver = GaussianSpec::long_memory(0.7, 0.5, 1);
  l.innovation = InnovationLaw::kExponential;
  a.durations = DurationModel::from_lmsd(l);
  a.noise.regime = regime;
  a.noise.xi = xi;
  a.noise.scale = scale;
  return a;
}

std::vector<std::size_t> pow2_grid(int lo, int hi, int step = 1) {
  std::vector<std::size_t> g;
  for (int k = lo; k <= hi; k += step) g.push_back(std::size_t{1} << k);
  return g;
}

// 1. FBM covariance at pinned grid pairs.
Outcome c1() {
  const std::size_t steps = 64, samples = 5000;
  const std::vector<std::pair<std::size_t, std::size_t>> pairs{{8, 16}, {16, 48}, {32, 32}, {40, 64}, {64, 64}};
  Outcome out{true, ""};
  double worst = 0.0;
  for (double h : {0.3, 0.5, 0.7}) {
    FbmSampler sampler(h, steps);
    std::vector<std::vector<double>> paths(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      Rng rng = make_rng(derive_seed(101, {static_cast<std::uint64_t>(h * 1000), i}));
      paths[i] = sampler.sample(rng).values;
    }
    for (auto [a, b] : pairs) {
      std::vector<double> prod(samples);
      for (std::size_t i = 0; i < samples; ++i) prod[i] = paths[i][a] * paths[i][b];
      const double emp = stats::mean(prod);
      const double se = std::sqrt(stats::variance(prod) / static_cast<double>(samples));
      const double s = static_cast<double>(a) / steps, t = static_cast<double>(b) / steps;
      const double th = 0.5 * (std::pow(s, 2 * h) - std::pow(std::abs(t - s), 2 * h) + std::pow(t, 2 * h));
      const double z = std::abs(emp - th) / se;
      worst = std::max(worst, z);
      if (z > 3.0) out.pass = false;
    }
  }
  out.detail = "max |emp - theory| / se = " + fmt(worst) + " over 15 pairs (tol 3)";
  return out;
}

// 2. Duration intensities.
Outcome c2() {
  // LMSD: 1000 independent paths of 1000 draws (long memory makes a single
  // 10^6 path mean too noisy for a 2% band).
  LmsdSpec l;
  l.sigma = 1.0;
  l.driver = GaussianSpec::long_memory(0.7, 0.5, 1000);
  l.length = 1000;
  double sum = 0.0;
  for (std::size_t p = 0; p < 1000; ++p) {
    const auto s = gen_lmsd(l, derive_seed(202, {p}));
    for (double v : s.durations) sum += v;
  }
  const double lmsd_mean = sum / 1e6;
  AcdSpec a;
  a.length = 1000000;
  const auto d = gen_acd(a, 203);
  const double acd_mean = stats::mean(d);
  const double e_lmsd = std::abs(lmsd_mean / std::exp(0.5) - 1.0);
  const double e_acd = std::abs(acd_mean - 1.0);
  return {e_lmsd <= 0.02 && e_acd <= 0.02, "LMSD mean " + fmt(lmsd_mean, 6) + " vs e^0.5 = " + fmt(std::exp(0.5), 6) +
                                               " (rel " + fmt(e_lmsd) + "); ACD mean " + fmt(acd_mean, 6) +
                                               " vs 1 (rel " + fmt(e_acd) + "); tol 0.02"};
}

// 3. Leverage correlations corr(xi_k, tau_{k+1}) with eps == 1.
Outcome c3() {
  auto corr_for = [](XiConstruction xi) {
    LmsdSpec l;
    l.sigma = 1.0;
    l.driver = GaussianSpec::long_memory(0.7, 0.5, 1);
    l.innovation = InnovationLaw::kDegenerate;
    NoiseSpec ns;
    ns.regime = xi == XiConstruction::kLeverageSquare ? NoiseRegime::kStrong : NoiseRegime::kStandard;
    ns.xi = xi;
    ns.scale = 1.0;
    const auto model = DurationModel::from_lmsd(l);
    std::vector<double> x, y;
    x.reserve(1000000);
    y.reserve(1000000);
    for (std::size_t p = 0; p < 1000; ++p) {
      const auto d = gen_durations(model, 1000, derive_seed(303, {p}));
      const auto s = gen_xi(ns, d.driver, 1000, derive_seed(304, {p}));
      // xi_k (k = 0..n-1) against tau_{k+1} = durations[k].
      for (std::size_t k = 0; k < 1000; ++k) {
        x.push_back(s.raw[k]);
        y.push_back(d.durations[k]);
      }
    }
    return stats::correlation(x, y);
  };
  const double sq = corr_for(XiConstruction::kLeverageSquare);
  const double h23 = corr_for(XiConstruction::kLeverageHermite23);
  const bool pass = std::abs(sq - 0.539) <= 0.02 && std::abs(h23 - 0.082) <= 0.01;
  return {pass, "square " + fmt(sq) + " (0.539 +- 0.02); hermite23 " + fmt(h23) + " (0.082 +- 0.01)"};
}

MarketConfig levels_market() {
  return MarketConfig::spurious(2.0, 0.1, poisson_asset(1.0, 1.0), poisson_asset(1.0, 1.0), 1.0);
}

// 4. Levels FCLT covariance.
Outcome c4() {
  const std::vector<std::size_t> grid{10000};
  const auto rep = levels_experiment(levels_market(), grid, 2000, 404, workers());
  const auto& s = rep.stats[0];
  return {rep.max_relative_error <= 0.10,
          "empirical (s11, s12, s22) = (" + fmt(s.empirical.a11) + ", " + fmt(s.empirical.a12) + ", " +
              fmt(s.empirical.a22) + ") vs (5, 2.1, 1.01); max rel err " + fmt(rep.max_relative_error) + " (tol 0.1)"};
}

struct WeakResult {
  double slope = 0.0;
  double ks = 1.0;
  double ks_p = 0.0;
};

WeakResult weak_run(EstimatorId id, FunctionalKind kind, Seed seed) {
  const double h = 0.25, c = 0.5, theta = 1.5;
  ExperimentSpec spec;
  spec.name = to_string(id);
  spec.market = MarketConfig::cointegrated(theta, weak_asset(c, h), weak_asset(c, h), 1.0);
  spec.estimator = id;
  spec.scale_exponent = 0.5 - h;
  const auto grid = pow2_grid(8, 13);
  const auto rate = rate_experiment(spec, grid, 500, seed, workers());
  LimitFunctional f;
  f.kind = kind;
  f.hurst = h;
  ScaleParams p = scale_params(spec.market);
  f.scale = kind == FunctionalKind::kTaperWeak ? weak_taper_scale(p) : weak_ols_scale(p);
  const std::vector<std::size_t> top{std::size_t{1} << 13};
  const auto dist = distribution_experiment(spec, top, 1000, f, 10000, kMinReferenceGrid, seed + 1, workers());
  return {rate.rate.slope, dist.summary[0].ks_stat, dist.summary[0].ks_p};
}

// 5. Weak OLS.
Outcome c5() {
  const auto r = weak_run(EstimatorId::kOls, FunctionalKind::kRatioBBH, 505);
  return {std::abs(r.slope + 0.25) <= 0.1 && r.ks < 0.08,
          "slope " + fmt(r.slope) + " (-0.25 +- 0.1); KS at n=2^13 " + fmt(r.ks) + " (p " + fmt(r.ks_p) +
              ", tol < 0.08)"};
}

// 6. Weak taper.
Outcome c6() {
  const auto r = weak_run(EstimatorId::kTaper, FunctionalKind::kTaperWeak, 606);
  return {std::abs(r.slope + 0.25) <= 0.1 && r.ks < 0.08,
          "slope " + fmt(r.slope) + " (-0.25 +- 0.1); KS at n=2^13 " + fmt(r.ks) + " (p " + fmt(r.ks_p) +
              ", tol < 0.08)"};
}

ExperimentSpec strong_spec(EstimatorId id) {
  ExperimentSpec spec;
  spec.name = to_string(id);
  const auto a = lmsd_leverage_asset(XiConstruction::kLeverageSquare, NoiseRegime::kStrong, 1.0);
  spec.market = MarketConfig::cointegrated(1.5, a, a, 1.0);
  spec.estimator = id;
  spec.scale_exponent = 1.5 - 0.7;
  return spec;
}

// 7. Strong taper rates, discrete and continuous-averaged.
Outcome c7() {
  const auto grid = pow2_grid(8, 12);
  const auto d = rate_experiment(strong_spec(EstimatorId::kTaper), grid, 500, 707, workers());
  const auto c = rate_experiment(strong_spec(EstimatorId::kCTaper), grid, 500, 708, workers());
  const bool pass = std::abs(d.rate.slope + 0.8) <= 0.12 && std::abs(c.rate.slope + 0.8) <= 0.12;
  return {pass, "discrete slope " + fmt(d.rate.slope) + ", continuous slope " + fmt(c.rate.slope) +
                    " (-0.8 +- 0.12)"};
}

// 7b. Continuous-averaged delta scaling at fixed n.
Outcome c7b() {
  const double h = 0.7;
  const std::vector<std::size_t> grid{1024, 2048};
  auto spec = strong_spec(EstimatorId::kCTaper);
  spec.delta = 1.0;
  const auto a = rate_experiment(spec, grid, 500, 717, workers());
  spec.delta = 2.0;
  const auto b = rate_experiment(spec, grid, 500, 718, workers());
  const double var_a = a.summary[0].rmse * a.summary[0].rmse;
  const double var_b = b.summary[0].rmse * b.summary[0].rmse;
  const double ratio = var_b / var_a;
  const double stated = std::pow(2.0, 2 * h);
  const double derived = std::pow(2.0, 2 * h - 3.0);
  return {std::abs(ratio / stated - 1.0) <= 0.2,
          "var ratio (2 delta / delta) at n = 1024: " + fmt(ratio) + "; stated 2^{2H} = " + fmt(stated) +
              " (tol 20%); window-average derivation predicts 2^{2H-3} = " + fmt(derived)};
}

// 8. Standard cointegration with the Hermite23 leverage construction.
MCReport hermite_run(double weight, Seed seed) {
  ExperimentSpec spec;
  spec.name = "hermite23";
  auto a = lmsd_leverage_asset(XiConstruction::kLeverageHermite23, NoiseRegime::kStandard, 1.0);
  a.noise.hermite_weight = weight;
  spec.market = MarketConfig::cointegrated(1.5, a, a, 1.0);
  spec.estimator = EstimatorId::kCTaper;
  spec.scale_exponent = 1.0;
  return rate_experiment(spec, pow2_grid(9, 13, 2), 500, seed, workers());
}

std::string iqr_list(const MCReport& r) {
  std::string s;
  for (const auto& row : r.summary) s += (s.empty() ? "" : ", ") + fmt(row.iqr_n_error);
  return s;
}

Outcome c8() {
  const auto r = hermite_run(kHermite23Weight, 808);
  // Weight -2/3 cancels the rank-one term of (xi - mu*) tau; reported only.
  const auto cancel = hermite_run(-2.0 / 3.0, 809);
  const bool pass = r.iqr_spread >= 0.5 && r.iqr_spread <= 2.0;
  return {pass, "IQR of n(theta_hat - theta) at n = 2^9, 2^11, 2^13: " + iqr_list(r) + "; max/min " +
                    fmt(r.iqr_spread) + " (within [0.5, 2]); rank-one coefficient " +
                    fmt(leverage_memory_coefficient(XiConstruction::kLeverageHermite23, 1.0)) +
                    "; diagnostic weight -2/3 (coefficient 0): IQRs " + iqr_list(cancel) + ", max/min " +
                    fmt(cancel.iqr_spread)};
}

// 9. Spurious regression.
Outcome c9() {
  ExperimentSpec spec;
  spec.name = "spurious";
  spec.market = levels_market();
  spec.estimator = EstimatorId::kSpurious;
  LimitFunctional f;
  f.kind = FunctionalKind::kSpurious;
  f.sigma = levels_covariance(spec.market);
  const std::vector<std::size_t> grid{2048, 8192};
  const auto r = distribution_experiment(spec, grid, 1000, f, 10000, kMinReferenceGrid, 909, workers());
  const auto between = ks_between(r, 2048, 8192);
  const double ks_ref = r.summary[1].ks_stat;
  return {between.p_value > 0.01 && ks_ref < 0.1,
          "KS(2^11 vs 2^13) p = " + fmt(between.p_value) + " (> 0.01); KS vs functional at 2^13 = " + fmt(ks_ref) +
              " (< 0.1)"};
}

// 10. Exact identities.
Outcome c10() {
  std::vector<std::string> fails;
  // Summation by parts.
  double worst_sbp = 0.0;
  {
    Rng rng = make_rng(1010);
    std::normal_distribution<double> nd;
    for (std::size_t n : {16, 257, 4096}) {
      std::vector<double> x(n);
      for (auto& v : x) v = nd(rng);
      const double x0 = nd(rng);
      for (std::size_t l = 1; l <= 5; ++l) {
        const auto a = tapered_dft(x, x0, Taper::cosine(), l);
        const auto b = tapered_dft_by_parts(x, x0, Taper::cosine(), l);
        worst_sbp = std::max(worst_sbp, std::abs(a - b) / std::max(std::abs(a), 1e-300));
      }
    }
    if (worst_sbp > 1e-10) fails.push_back("summation-by-parts");
  }
  // Decomposition of y1 - theta y2.
  double worst_dec = 0.0;
  {
    AssetConfig a = lmsd_leverage_asset(XiConstruction::kLeverageSquare, NoiseRegime::kStrong, 2.0);
    const auto m = MarketConfig::cointegrated(1.5, a, a, 2000.0);
    const auto sim = simulate(m, 1011);
    std::vector<double> t;
    for (int j = 1; j <= 2000; ++j) t.push_back(j);
    const auto y1 = sample_at(sim.y1, t), y2 = sample_at(sim.y2, t);
    CointInputs in{&sim.assets[0].clock, &sim.assets[1].clock, sim.assets[0].efficient, sim.assets[1].efficient,
                   sim.assets[0].xi, sim.assets[1].xi};
    try {
      const auto terms = coint_error_decomposition(in, 1.5, t, y1, y2);
      for (std::size_t j = 0; j < t.size(); ++j) {
        const double obs = y1[j] - 1.5 * y2[j];
        worst_dec = std::max(worst_dec, std::abs(terms[j].total() - obs) / std::max(1.0, std::abs(obs)));
      }
    } catch (const std::exception&) {
      worst_dec = INFINITY;
    }
    if (worst_dec > 1e-9) fails.push_back("decomposition");
  }
  // Exact fit.
  double worst_fit = 0.0;
  {
    const double theta = 1.7;
    const auto sim = simulate(MarketConfig::cointegrated(1.5, poisson_asset(1, 1), poisson_asset(1, 1), 500.0), 1012);
    StepPath p1 = sim.y2;
    for (auto& v : p1.values) v *= theta;
    p1.initial *= theta;
    const auto y2 = sample_grid(sim.y2, 1.0, 500);
    std::vector<double> y1(y2);
    for (auto& v : y1) v *= theta;
    TaperConfig cfg;
    for (double est : {ols_theta(y1, y2), spurious_delta(y1, y2), taper_theta(y1, y2, cfg),
                       ctaper_theta(p1, sim.y2, 1.0, cfg)})
      worst_fit = std::max(worst_fit, std::abs(est - theta) / theta);
    if (worst_fit > 1e-12) fails.push_back("exact-fit");
  }
  // Interval averages against a segment-by-segment quadrature.
  double worst_avg = 0.0;
  {
    const auto sim = simulate(MarketConfig::cointegrated(1.5, poisson_asset(3, 1), poisson_asset(3, 1), 300.0), 1013);
    const auto& p = sim.y1;
    const double delta = 0.7;
    const std::size_t n = 400;
    const auto avg = average_over(p, delta, n);
    // Cumulative integral A(t) at every jump, then interpolate.
    std::vector<double> knots{0.0}, area{0.0};
    double cur = p.initial;
    for (std::size_t k = 0; k < p.times.size(); ++k) {
      area.push_back(area.back() + cur * (p.times[k] - knots.back()));
      knots.push_back(p.times[k]);
      cur = p.values[k];
    }
    auto A = [&](double t) {
      std::size_t i = static_cast<std::size_t>(std::upper_bound(knots.begin(), knots.end(), t) - knots.begin()) - 1;
      const double v = i == 0 ? p.initial : p.values[i - 1];
      return area[i] + v * (t - knots[i]);
    };
    for (std::size_t k = 0; k < n; ++k) {
      const double want = A((k + 1) * delta) - A(k * delta);
      worst_avg = std::max(worst_avg, std::abs(avg[k] - want) / std::max(1.0, std::abs(want)));
    }
    if (worst_avg > 1e-9) fails.push_back("interval-averaging");
  }
  // Seed determinism.
  bool same = true;
  {
    AssetConfig a = weak_asset(1.0, 0.25);
    const auto m = MarketConfig::cointegrated(1.5, a, a, 1000.0);
    const auto s1 = simulate(m, 1014), s2 = simulate(m, 1014);
    same = s1.y1.times == s2.y1.times && s1.y1.values == s2.y1.values && s1.y2.values == s2.y2.values;
    ExperimentSpec spec;
    spec.market = m;
    const std::vector<std::size_t> grid{64, 128, 256};
    const auto r1 = rate_experiment(spec, grid, 20, 1015, 1);
    const auto r2 = rate_experiment(spec, grid, 20, 1015, 3);
    for (std::size_t i = 0; i < r1.rows.size(); ++i)
      same = same && std::memcmp(&r1.rows[i].estimate, &r2.rows[i].estimate, sizeof(double)) == 0;
    if (!same) fails.push_back("determinism");
  }
  return {fails.empty(), "sbp rel " + fmt(worst_sbp, 3) + " (1e-10); decomposition " + fmt(worst_dec, 3) +
                             " (1e-9); exact fit " + fmt(worst_fit, 3) + "; averaging " + fmt(worst_avg, 3) +
                             " (1e-9); determinism " + (same ? "bit-exact" : "MISMATCH")};
}

// 11. GPH sanity.
Outcome c11() {
  const std::size_t n = 4096, bw = 64, reps = 500;
  std::vector<double> white(reps), fgn(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng = make_rng(derive_seed(1111, {r}));
    std::normal_distribution<double> nd;
    std::vector<double> x(n);
    for (auto& v : x) v = nd(rng);
    white[r] = gph_memory(x, bw);
    fgn[r] = gph_memory(gen_fgn(0.75, n, derive_seed(1112, {r})), bw);
  }
  const double mw = stats::mean(white), mf = stats::mean(fgn);
  return {std::abs(mw) <= 0.05 && std::abs(mf - 0.25) <= 0.07,
          "white mean d = " + fmt(mw) + " (0 +- 0.05); fGn H=0.75 mean d = " + fmt(mf) + " (0.25 +- 0.07)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"1", c1}, {"2", c2}, {"3", c3}, {"4", c4},   {"5", c5},   {"6", c6},
      {"7", c7}, {"7b", c7b}, {"8", c8}, {"9", c9}, {"10", c10}, {"11", c11}};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& [id, fn] : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << " [" << fmt(secs, 3)
              << " s]" << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
