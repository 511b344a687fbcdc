#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tickcoint/clock.hpp"
#include "tickcoint/durations.hpp"
#include "tickcoint/errors.hpp"

using namespace tickcoint;

namespace {

DeformationSpec linear(double slope) {
  DeformationSpec f;
  f.periodic = false;
  f.pieces = {DeformationPiece{DeformationPiece::Kind::kTrading, 1.0, slope, 0.0, 0.0}};
  return f;
}

DeformationSpec closed_then_jump() {
  DeformationSpec f;
  f.periodic = false;
  f.pieces = {DeformationPiece{DeformationPiece::Kind::kNontrading, 10.0, 0.0, 0.0, 5.0},
              DeformationPiece{DeformationPiece::Kind::kTrading, 10.0, 1.0, 0.0, 0.0}};
  return f;
}

DeformationSpec trading_day() {
  DeformationSpec f;
  f.pieces = {DeformationPiece{DeformationPiece::Kind::kTrading, 6.5, 1.0, 0.3, 0.0},
              DeformationPiece{DeformationPiece::Kind::kNontrading, 17.5, 0.0, 0.0, 2.0}};
  return f;
}

}  // namespace

TEST(EventClock, CountsAndRecurrence) {
  std::vector<double> d{1, 1, 1};
  auto c = EventClock::from_durations(d);
  EXPECT_EQ(c.count(2.5), 2u);
  EXPECT_EQ(c.count(2.0), 2u);
  EXPECT_EQ(c.count(0.0), 0u);
  EXPECT_DOUBLE_EQ(c.forward_recurrence(0.0), c.event_time(1));
  std::vector<double> d2{0.5, 0.2};
  auto c2 = EventClock::from_durations(d2);
  EXPECT_EQ(c2.count(0.6), 1u);
  EXPECT_NEAR(c2.forward_recurrence(0.6), 0.1, 1e-15);
  EXPECT_THROW(c2.forward_recurrence(0.7), RangeError);
}

TEST(EventClock, RejectsNonpositiveDuration) {
  std::vector<double> d{1.0, 0.0};
  EXPECT_THROW(EventClock::from_durations(d), InputError);
  EXPECT_THROW(EventClock(std::vector<double>{2.0, 1.0}), InputError);
}

TEST(EventClock, TiesCountedWithMultiplicity) {
  EventClock c(std::vector<double>{1.0, 2.0, 2.0, 3.0});
  EXPECT_FALSE(c.is_simple());
  EXPECT_EQ(c.count(2.0), 3u);
  EXPECT_GE(c.count(c.event_time(2)), 2u);
  EXPECT_DOUBLE_EQ(c.forward_recurrence(1.5), 0.5);
}

TEST(EventClock, SimpleClockHasCountEqualIndex) {
  auto c = EventClock::from_durations(gen_iid_durations(InnovationLaw::kExponential, 500, 3));
  ASSERT_TRUE(c.is_simple());
  for (std::size_t k = 1; k <= c.size(); ++k) EXPECT_EQ(c.count(c.event_time(k)), k);
}

TEST(Deformation, IdentityLeavesClockUnchanged) {
  auto base = EventClock::from_durations(gen_iid_durations(InnovationLaw::kExponential, 200, 4));
  auto out = deform_clock(base, identity_deformation());
  ASSERT_EQ(out.size(), base.size());
  for (std::size_t k = 1; k <= base.size(); ++k) EXPECT_NEAR(out.event_time(k), base.event_time(k), 1e-12);
}

TEST(Deformation, JumpSwallowsEventsIntoTie) {
  EventClock base(std::vector<double>{1.0, 2.0, 3.0, 6.0});
  auto out = deform_clock(base, closed_then_jump());
  EXPECT_DOUBLE_EQ(out.event_time(1), 10.0);
  EXPECT_DOUBLE_EQ(out.event_time(2), 10.0);
  EXPECT_DOUBLE_EQ(out.event_time(3), 10.0);
  EXPECT_NEAR(out.event_time(4), 11.0, 1e-12);
  EXPECT_EQ(out.count(9.999), 0u);
  EXPECT_EQ(out.count(10.0), 3u);
}

TEST(Deformation, DoublingSlopeDoublesIntensity) {
  auto base = EventClock::from_durations(gen_iid_durations(InnovationLaw::kExponential, 300000, 5));
  auto f = linear(2.0);
  EXPECT_DOUBLE_EQ(f.gamma(), 2.0);
  auto out = deform_clock(base, f);
  const double T = 100000.0;
  EXPECT_NEAR(out.count(T) / T, 2.0, 0.06);
  EXPECT_NEAR(out.event_time(7), base.event_time(7) / 2, 1e-12);
}

TEST(Deformation, PeriodicScheduleIntensityIsLambdaGamma) {
  auto f = trading_day();
  ASSERT_NO_THROW(f.validate());
  EXPECT_NEAR(f.gamma(), (6.5 + 2.0) / 24.0, 1e-15);
  auto base = EventClock::from_durations(gen_iid_durations(InnovationLaw::kExponential, 60000, 6));
  auto out = deform_clock(base, f);
  const double T = 100000.0;
  EXPECT_NEAR(out.count(T) / T / f.gamma(), 1.0, 0.03);
}

TEST(Deformation, GaloisInequalities) {
  for (const auto& f : {trading_day(), closed_then_jump(), intraday_seasonal_spec(10.0, 1.0)}) {
    for (double t = 0.05; t < 60.0; t += 0.37) EXPECT_LE(f.inverse(f(t)), t + 1e-9);
    for (double u = 0.05; u < 30.0; u += 0.41) EXPECT_GE(f(f.inverse(u)), u - 1e-9);
  }
}

TEST(Deformation, ConstantDuringNontrading) {
  auto f = trading_day();
  EXPECT_DOUBLE_EQ(f(7.0), f(20.0));
  EXPECT_DOUBLE_EQ(f.derivative(10.0), 0.0);
  EXPECT_NEAR(f(24.0) - f(23.999999), 2.0, 1e-5);
}

TEST(Deformation, EventCountPreserved) {
  auto f = trading_day();
  auto base = EventClock::from_durations(gen_iid_durations(InnovationLaw::kExponential, 5000, 7));
  auto out = deform_clock(base, f);
  for (double T : {50.0, 333.3, 1000.0}) EXPECT_EQ(out.count(T), base.count(f(T))) << T;
}

TEST(Deformation, RejectsViolations) {
  auto f = trading_day();
  f.max_nontrading = 10.0;
  EXPECT_THROW(f.validate(), ConfigError);
  DeformationSpec g;
  g.pieces = {DeformationPiece{DeformationPiece::Kind::kNontrading, 1.0, 0.0, 0.0, 0.0},
              DeformationPiece{DeformationPiece::Kind::kNontrading, 1.0, 0.0, 0.0, 1.0},
              DeformationPiece{DeformationPiece::Kind::kTrading, 1.0, 1.0, 0.0, 1.0}};
  try {
    g.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "deformation.pieces[0]");
  }
  auto h = trading_day();
  h.min_interval = 7.0;
  EXPECT_THROW(h.validate(), ConfigError);
}

TEST(Seasonal, CalculusChecks) {
  const double T = 10.0, a = 1.0;
  auto f = intraday_seasonal_spec(T, a);
  EXPECT_NEAR(f.derivative(0.0), 1.0 + 2 * std::numbers::pi * a / T, 1e-12);
  EXPECT_NEAR(f(T), T, 1e-12);
  EXPECT_NEAR(f(2.5), 2.5 + a, 1e-12);
  EXPECT_DOUBLE_EQ(f.gamma(), 1.0);
  auto id = intraday_seasonal_spec(T, 0.0);
  EXPECT_NEAR(id(3.3), 3.3, 1e-12);
  EXPECT_THROW(intraday_seasonal_spec(T, 2.0), ConfigError);
}

TEST(Seasonal, RandomPhaseKeepsFOfZero) {
  auto f = with_random_phase(intraday_seasonal_spec(10.0, 1.0), 9);
  EXPECT_GT(f.phase, 0.0);
  EXPECT_LT(f.phase, 10.0);
  EXPECT_DOUBLE_EQ(f(0.0), 0.0);
  EXPECT_NEAR(f(10.0), 10.0, 1e-9);
}

TEST(ForwardRecurrence, DeterministicUnitDurations) {
  std::vector<EventClock> clocks(3, EventClock::from_durations(std::vector<double>(200, 1.0)));
  auto probes = default_probe_grid(200.0, 10.0);
  double expected = 0.0;
  for (double s : probes) expected = std::max(expected, 1.0 - (s - std::floor(s)));
  EXPECT_NEAR(forward_recurrence_moment(clocks, 1, probes), expected, 1e-9);
  EXPECT_LE(forward_recurrence_moment(clocks, 1, probes), 1.0);
}

TEST(ForwardRecurrence, PoissonMoments) {
  std::vector<EventClock> clocks;
  for (int r = 0; r < 4000; ++r)
    clocks.push_back(EventClock::from_durations(gen_iid_durations(InnovationLaw::kExponential, 80, derive_seed(10, {std::uint64_t(r)}))));
  std::vector<double> probes{5.0, 20.0, 40.0};
  for (double s : probes) {
    std::vector<double> one{s};
    EXPECT_NEAR(forward_recurrence_moment(clocks, 1, one), 1.0, 0.06);
    EXPECT_NEAR(forward_recurrence_moment(clocks, 2, one), 2.0, 0.25);
  }
  std::vector<EventClock> single(1, clocks[0]);
  EXPECT_THROW(forward_recurrence_moment(single, 1, probes), InputError);
}
