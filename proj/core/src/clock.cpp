#include "tickcoint/clock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tickcoint/errors.hpp"

namespace tickcoint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInverseTolerance = 1e-12;

double piece_value(const DeformationPiece& p, double x) {
  if (p.kind == DeformationPiece::Kind::kNontrading) return 0.0;
  return p.slope * x + p.amplitude * std::sin(kTwoPi * x / p.length);
}

double piece_derivative(const DeformationPiece& p, double x) {
  if (p.kind == DeformationPiece::Kind::kNontrading) return 0.0;
  return p.slope + p.amplitude * kTwoPi / p.length * std::cos(kTwoPi * x / p.length);
}

// Smallest x in [0, upper] with piece_value(p, x) >= target, for a trading
// piece (strictly increasing).
double solve_piece(const DeformationPiece& p, double target, double upper) {
  if (target <= 0.0) return 0.0;
  if (p.amplitude == 0.0) return std::min(target / p.slope, upper);
  double lo = 0.0;
  double hi = upper;
  while (hi - lo > kInverseTolerance * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (piece_value(p, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

EventClock::EventClock(std::vector<double> times) : times_(std::move(times)) {
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || !(times_[k] > 0.0))
      throw InputError("event clock: event times must be finite and positive (event " + std::to_string(k + 1) + ")");
    if (k > 0 && times_[k] < times_[k - 1])
      throw InputError("event clock: event times must be nondecreasing (event " + std::to_string(k + 1) + ")");
  }
}

EventClock EventClock::from_durations(std::span<const double> durations) {
  std::vector<double> t(durations.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < durations.size(); ++k) {
    if (!(durations[k] > 0.0) || !std::isfinite(durations[k]))
      throw InputError("event clock: duration " + std::to_string(k + 1) + " is not positive");
    acc += durations[k];
    t[k] = acc;
  }
  return EventClock(std::move(t));
}

std::size_t EventClock::count(double t) const {
  return static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
}

double EventClock::event_time(std::size_t k) const {
  if (k == 0 || k > times_.size()) throw RangeError("event clock: event index out of range");
  return times_[k - 1];
}

double EventClock::forward_recurrence(double t) const {
  const std::size_t n = count(t);
  if (n >= times_.size()) throw RangeError("event clock: no event after t = " + std::to_string(t));
  return times_[n] - t;
}

bool EventClock::is_simple() const {
  return std::adjacent_find(times_.begin(), times_.end()) == times_.end();
}

double DeformationPiece::min_slope() const noexcept {
  if (kind == Kind::kNontrading) return 0.0;
  return slope - kTwoPi * std::abs(amplitude) / length;
}

double DeformationSpec::period() const {
  double p = 0.0;
  for (const auto& piece : pieces) p += piece.length;
  return p;
}

double DeformationSpec::gamma() const {
  if (!periodic) return pieces.back().slope;
  double rise = 0.0;
  for (const auto& piece : pieces) rise += piece.rise() + piece.jump;
  return rise / period();
}

double DeformationSpec::raw(double t) const {
  if (t <= 0.0) return 0.0;
  double offset = 0.0;
  double r = t;
  if (periodic) {
    const double p = period();
    const double q = std::floor(t / p);
    double rise = 0.0;
    for (const auto& piece : pieces) rise += piece.rise() + piece.jump;
    offset = q * rise;
    r = t - q * p;
  }
  double base = offset;
  double start = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    const bool open_end = !periodic && i + 1 == pieces.size();
    if (open_end || r < start + piece.length) return base + piece_value(piece, r - start);
    base += piece.rise() + piece.jump;
    start += piece.length;
  }
  return base;
}

double DeformationSpec::raw_inverse(double u) const {
  if (u <= 0.0) return 0.0;
  double v = u;
  double t0 = 0.0;
  if (periodic) {
    double rise = 0.0;
    for (const auto& piece : pieces) rise += piece.rise() + piece.jump;
    double q = std::floor(u / rise);
    v = u - q * rise;
    if (v <= 0.0 && q > 0.0) {
      q -= 1.0;
      v += rise;
    }
    t0 = q * period();
  }
  double base = 0.0;
  double start = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    if (v <= base) return t0 + start;
    const bool open_end = !periodic && i + 1 == pieces.size();
    if (piece.kind == DeformationPiece::Kind::kTrading) {
      if (open_end) {
        const double upper = (v - base + std::abs(piece.amplitude)) / piece.slope + piece.length;
        return t0 + start + solve_piece(piece, v - base, upper);
      }
      if (v <= base + piece.rise()) return t0 + start + solve_piece(piece, v - base, piece.length);
    }
    base += piece.rise() + piece.jump;
    start += piece.length;
  }
  return t0 + start;
}

double DeformationSpec::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  return raw(t + phase) - raw(phase);
}

double DeformationSpec::derivative(double t) const {
  double r = std::max(0.0, t + phase);
  if (periodic) r -= std::floor(r / period()) * period();
  double start = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const bool open_end = !periodic && i + 1 == pieces.size();
    if (open_end || r < start + pieces[i].length) return piece_derivative(pieces[i], r - start);
    start += pieces[i].length;
  }
  return piece_derivative(pieces.back(), pieces.back().length);
}

double DeformationSpec::inverse(double u) const {
  if (u <= 0.0) return 0.0;
  return std::max(0.0, raw_inverse(u + raw(phase)) - phase);
}

void DeformationSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) { throw ConfigError(msg, 0, field); };
  if (pieces.empty()) fail("deformation.pieces", "schedule needs at least one piece");
  if (!(min_interval > 0.0)) fail("deformation.min_interval", "delta_0 must be positive");
  if (!(min_slope > 0.0)) fail("deformation.min_slope", "delta_1 must be positive");
  if (!(phase >= 0.0) || !std::isfinite(phase)) fail("deformation.phase", "phase must be finite and nonnegative");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    const std::string field = "deformation.pieces[" + std::to_string(i) + "]";
    if (!std::isfinite(p.length) || p.length < min_interval)
      fail(field, "minimum duration of trading and nontrading periods violated (length < delta_0)");
    if (p.kind == DeformationPiece::Kind::kNontrading && p.length > max_nontrading)
      fail(field, "maximum duration of nontrading periods violated (length > C_0)");
    if (p.kind == DeformationPiece::Kind::kTrading && !(p.min_slope() >= min_slope))
      fail(field, "non-stoppage of trading time violated (min slope < delta_1)");
    if (!(p.jump >= 0.0)) fail(field, "jumps must be nonnegative");
    if (p.jump > max_jump) fail(field, "jump exceeds the bound C");
  }
  const std::size_t n = pieces.size();
  const std::size_t pairs = periodic ? n : n - 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& a = pieces[i];
    const auto& b = pieces[(i + 1) % n];
    if (a.kind != b.kind || a.jump > 0.0) continue;
    const std::string field = "deformation.pieces[" + std::to_string(i) + "]";
    if (a.kind == DeformationPiece::Kind::kNontrading)
      fail(field, "adjacent nontrading pieces must be separated by a jump");
    // Two trading pieces may join without a jump only if f stays
    // differentiable across the boundary (then there is no breakpoint).
    if (std::abs(piece_derivative(a, a.length) - piece_derivative(b, 0.0)) > 1e-9)
      fail(field, "adjacent trading pieces must be separated by a jump");
  }
  if (periodic) {
    double rise = 0.0;
    for (const auto& p : pieces) rise += p.rise() + p.jump;
    if (!(rise > 0.0)) fail("deformation.pieces", "periodic schedule must rise over one period (gamma > 0)");
  } else if (pieces.back().kind != DeformationPiece::Kind::kTrading) {
    fail("deformation.pieces", "non-periodic schedule must end with a trading piece (gamma > 0)");
  }
}

DeformationSpec identity_deformation() {
  DeformationSpec s;
  s.periodic = false;
  return s;
}

DeformationSpec intraday_seasonal_spec(double period, double amplitude, double min_slope) {
  if (!(period > 0.0)) throw ConfigError("period must be positive", 0, "deformation.period");
  DeformationSpec s;
  s.pieces = {DeformationPiece{DeformationPiece::Kind::kTrading, period, 1.0, amplitude, 0.0}};
  s.min_slope = min_slope;
  s.min_interval = std::min(s.min_interval, period);
  if (!(s.pieces[0].min_slope() >= min_slope))
    throw ConfigError("seasonal amplitude too large: 1 - 2 pi a / T must be >= delta_1", 0, "deformation.amplitude");
  s.validate();
  return s;
}

DeformationSpec with_random_phase(DeformationSpec spec, Seed seed) {
  Rng rng = make_rng(seed);
  const double p = spec.periodic ? spec.period() : 0.0;
  spec.phase = p > 0.0 ? std::uniform_real_distribution<double>(0.0, p)(rng) : 0.0;
  return spec;
}

EventClock deform_clock(const EventClock& base, const DeformationSpec& f) {
  f.validate();
  std::vector<double> t(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) t[k] = f.inverse(base.times()[k]);
  // f^<- is nondecreasing; guard against bisection noise at equal inputs.
  for (std::size_t k = 1; k < t.size(); ++k) t[k] = std::max(t[k], t[k - 1]);
  return EventClock(std::move(t));
}

std::vector<double> default_probe_grid(double horizon, double margin, std::size_t count) {
  if (count < 2) throw ParameterError("probe grid needs at least two points");
  const double top = horizon - margin;
  if (!(top > 0.0)) throw RangeError("probe grid: horizon minus margin must be positive");
  std::vector<double> g(count);
  for (std::size_t j = 0; j < count; ++j) g[j] = top * static_cast<double>(j) / static_cast<double>(count - 1);
  return g;
}

double forward_recurrence_moment(std::span<const EventClock> clocks, int p, std::span<const double> probes) {
  if (p != 1 && p != 2) throw ParameterError("forward recurrence moment: p must be 1 or 2");
  if (clocks.size() < 2) throw InputError("forward recurrence moment: insufficient replications (need >= 2 clocks)");
  if (probes.empty()) throw InputError("forward recurrence moment: no probe times");
  double sup = 0.0;
  for (double s : probes) {
    double acc = 0.0;
    for (const auto& c : clocks) {
      const double a = c.forward_recurrence(s);
      acc += p == 1 ? a : a * a;
    }
    sup = std::max(sup, acc / static_cast<double>(clocks.size()));
  }
  return sup;
}

}  // namespace tickcoint
