#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "tickcoint/errors.hpp"
#include "tickcoint/market.hpp"
#include "tickcoint/shocks.hpp"

using namespace tickcoint;

namespace {

AssetConfig poisson_asset(double lambda, double var = 1.0) {
  AssetConfig a;
  a.durations = DurationModel::poisson(lambda);
  a.efficient.variance = var;
  return a;
}

// Nontrading until `shift`, then unit slope: event times move right by shift.
DeformationSpec shift_by(double shift) {
  DeformationSpec f;
  f.periodic = false;
  f.pieces = {DeformationPiece{DeformationPiece::Kind::kNontrading, shift, 0.0, 0.0, 0.0},
              DeformationPiece{DeformationPiece::Kind::kTrading, 1.0, 1.0, 0.0, 0.0}};
  return f;
}

// y_i(t) straight from the double-indexed sums.
double brute_force(const MarketSample& s, std::size_t own, double weight, double t) {
  const auto& a = s.assets[own];
  const auto& b = s.assets[1 - own];
  const std::size_t n = a.clock.count(t);
  double v = 0.0;
  for (std::size_t k = 0; k < n; ++k) v += a.efficient[k] + a.eta[k];
  if (n == 0) return v;
  const std::size_t cross = b.clock.count(a.clock.event_time(n));
  for (std::size_t k = 0; k < cross; ++k) v += weight * b.efficient[k];
  return v;
}

}  // namespace

TEST(Simulate, EmptySumsGiveZeroPaths) {
  AssetConfig a;
  a.durations = DurationModel::deterministic(1.0);
  auto s = simulate(MarketConfig::cointegrated(1.0, a, a, 0.5), 1);
  EXPECT_TRUE(s.y1.times.empty());
  EXPECT_EQ(s.y1.value_at(0.5), 0.0);
  EXPECT_EQ(s.y2.value_at(0.25), 0.0);
  EXPECT_EQ(s.warnings.size(), 2u);
}

TEST(Simulate, MatchesDoubleSumOracle) {
  AssetConfig a = poisson_asset(1.0);
  a.noise.regime = NoiseRegime::kWeak;
  a.noise.hurst = 0.3;
  AssetConfig b = poisson_asset(0.6, 2.0);
  b.deformation = intraday_seasonal_spec(20.0, 2.0);
  for (auto cfg : {MarketConfig::cointegrated(1.5, a, b, 300.0), MarketConfig::spurious(2.0, 0.1, a, b, 300.0)}) {
    auto s = simulate(cfg, 2);
    for (double t = 0.0; t <= 300.0; t += 0.731) {
      EXPECT_NEAR(s.y1.value_at(t), brute_force(s, 0, cfg.theta21, t), 1e-9) << t;
      EXPECT_NEAR(s.y2.value_at(t), brute_force(s, 1, cfg.theta12, t), 1e-9) << t;
    }
  }
}

TEST(Simulate, AlternatingDeterministicClocks) {
  AssetConfig a;
  a.durations = DurationModel::deterministic(1.0);
  a.efficient.law = EfficientSpec::Law::kTwoPoint;
  AssetConfig b = a;
  b.deformation = shift_by(0.5);
  const double theta = 2.0;
  auto s = simulate(MarketConfig::cointegrated(theta, a, b, 6.0), 3);
  ASSERT_EQ(s.y1.times.size(), 6u);
  ASSERT_EQ(s.y2.times.size(), 5u);
  const auto& e1 = s.assets[0].efficient;
  const auto& e2 = s.assets[1].efficient;
  // asset 1 at k sees asset-2 events k' + 0.5 <= k, i.e. k - 1 of them
  double own = 0.0, cross = 0.0;
  for (std::size_t k = 1; k <= 6; ++k) {
    own += e1[k - 1];
    if (k >= 2) cross += e2[k - 2];
    EXPECT_DOUBLE_EQ(s.y1.values[k - 1], own + theta * cross);
    EXPECT_DOUBLE_EQ(s.y1.times[k - 1], double(k));
  }
  own = 0.0;
  cross = 0.0;
  for (std::size_t k = 1; k <= 5; ++k) {
    own += e2[k - 1];
    cross += e1[k - 1];
    EXPECT_DOUBLE_EQ(s.y2.values[k - 1], own + cross / theta);
    EXPECT_NEAR(s.y2.times[k - 1], k + 0.5, 1e-12);
  }
}

TEST(Simulate, TiesAcrossAssetsIncludedInCrossCount) {
  AssetConfig a;
  a.durations = DurationModel::deterministic(1.0);
  a.efficient.law = EfficientSpec::Law::kTwoPoint;
  auto s = simulate(MarketConfig::cointegrated(1.0, a, a, 3.0), 4);
  const auto& e1 = s.assets[0].efficient;
  const auto& e2 = s.assets[1].efficient;
  EXPECT_DOUBLE_EQ(s.y1.value_at(1.0), e1[0] + e2[0]);
  EXPECT_DOUBLE_EQ(s.y2.value_at(2.5), e2[0] + e2[1] + e1[0] + e1[1]);
}

TEST(Simulate, CrossIndexMonotone) {
  auto s = simulate(MarketConfig::cointegrated(1.0, poisson_asset(1.0), poisson_asset(2.0), 200.0), 5);
  const auto& c1 = s.assets[0].clock;
  const auto& c2 = s.assets[1].clock;
  for (double t = 0.3; t < 200.0; t += 0.5) {
    std::size_t n1 = c1.count(t);
    if (n1 == 0) continue;
    EXPECT_LE(c2.count(c1.event_time(n1)), c2.count(t));
  }
}

TEST(Simulate, DeterministicAndWarnsOnEmptyHorizon) {
  auto cfg = MarketConfig::cointegrated(1.2, poisson_asset(1.0), poisson_asset(1.0), 100.0);
  auto a = simulate(cfg, 6), b = simulate(cfg, 6);
  EXPECT_EQ(a.y1.values, b.y1.values);
  EXPECT_EQ(a.y2.times, b.y2.times);
  auto tiny = MarketConfig::cointegrated(1.0, poisson_asset(1e-6), poisson_asset(1e-6), 1e-3);
  EXPECT_EQ(simulate(tiny, 7).warnings.size(), 2u);
}

TEST(MarketConfig, CointegratedWeightsAreReciprocal) {
  auto c = MarketConfig::cointegrated(4.0, poisson_asset(1.0), poisson_asset(1.0), 1.0);
  EXPECT_TRUE(c.is_cointegrated());
  EXPECT_DOUBLE_EQ(c.theta12, 0.25);
  EXPECT_FALSE(MarketConfig::spurious(2.0, 0.1, poisson_asset(1.0), poisson_asset(1.0), 1.0).is_cointegrated());
}

TEST(StepPathSampling, RightContinuity) {
  StepPath p{0.0, 0.0, {1.0, 2.0, 2.0, 3.5}, {4.0, 5.0, 6.0, 7.0}, 10.0};
  std::vector<double> t{0.5, 1.0, 1.999, 2.0, 3.5, 10.0};
  auto v = sample_at(p, t);
  EXPECT_EQ(v, (std::vector<double>{0.0, 4.0, 4.0, 6.0, 7.0, 7.0}));
  EXPECT_THROW(p.value_at(10.5), RangeError);
  auto g = sample_grid(p, 1.0, 3);
  EXPECT_EQ(g, (std::vector<double>{4.0, 6.0, 6.0}));
}

TEST(StepPathSampling, BinarySearchOracle) {
  auto s = simulate(MarketConfig::cointegrated(1.0, poisson_asset(3.0), poisson_asset(1.0), 100.0), 8);
  for (double t = 0.0; t <= 100.0; t += 0.377) {
    double expect = 0.0;
    for (std::size_t i = 0; i < s.y1.times.size() && s.y1.times[i] <= t; ++i) expect = s.y1.values[i];
    EXPECT_EQ(s.y1.value_at(t), expect);
  }
}

TEST(AverageOver, ConstantAndHalfWindow) {
  StepPath c{0.0, 2.5, {}, {}, 10.0};
  for (double v : average_over(c, 0.5, 20)) EXPECT_DOUBLE_EQ(v, 1.25);
  StepPath j{0.0, 0.0, {0.5}, {3.0}, 1.0};
  EXPECT_DOUBLE_EQ(average_over(j, 1.0, 1)[0], 1.5);
  EXPECT_THROW(average_over(j, 0.6, 2), RangeError);
}

TEST(AverageOver, FineGridOracle) {
  // Jump times on a 1/64 lattice so the midpoint rule on a 1/1024 grid is exact.
  StepPath p;
  p.horizon = 8.0;
  double v = 0.0;
  for (int i = 1; i < 8 * 64; i += 7) {
    v += std::sin(i * 0.37);
    p.times.push_back(i / 64.0);
    p.values.push_back(v);
  }
  const double delta = 0.75;
  auto w = average_over(p, delta, 10);
  for (std::size_t k = 0; k < 10; ++k) {
    double acc = 0.0;
    const int m = 768;
    for (int i = 0; i < m; ++i) acc += p.value_at(k * delta + (i + 0.5) * delta / m) * delta / m;
    EXPECT_NEAR(w[k], acc, 1e-9);
  }
}

TEST(LevelsCovariance, ClosedForms) {
  auto c = MarketConfig::cointegrated(2.0, poisson_asset(1.0), poisson_asset(1.0), 1.0);
  auto m = levels_covariance(c);
  EXPECT_DOUBLE_EQ(m.a11, 5.0);
  EXPECT_DOUBLE_EQ(m.a12, m.a21);
  auto sym = levels_covariance(MarketConfig::cointegrated(1.0, poisson_asset(2.0, 3.0), poisson_asset(2.0, 3.0), 1.0));
  EXPECT_DOUBLE_EQ(sym.a11, sym.a22);
  auto sp = levels_covariance(MarketConfig::spurious(2.0, 0.1, poisson_asset(1.0), poisson_asset(1.0), 1.0));
  EXPECT_DOUBLE_EQ(sp.a11, 5.0);
  EXPECT_NEAR(sp.a22, 1.01, 1e-15);
  EXPECT_NEAR(sp.a12, 2.1, 1e-15);
}

TEST(LevelsCovariance, Empirical) {
  auto c = MarketConfig::cointegrated(2.0, poisson_asset(1.0), poisson_asset(1.0), 1.0);
  std::vector<std::size_t> grid{1000, 2000};
  auto st = levels_fclt_statistics(c, grid, 1500, 9, 4);
  for (const auto& s : st) {
    EXPECT_NEAR(s.empirical.a11 / s.theoretical.a11, 1.0, 0.12);
    EXPECT_NEAR(s.empirical.a22 / s.theoretical.a22, 1.0, 0.12);
    EXPECT_NEAR(s.empirical.a12 / s.theoretical.a12, 1.0, 0.12);
  }
}
