#pragma once

// Event clocks and time deformations.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tickcoint/random.hpp"

namespace tickcoint {

// Transaction times 0 < t_1 <= t_2 <= ... of one asset. Ties are kept as
// repeated entries.
class EventClock {
 public:
  EventClock() = default;
  explicit EventClock(std::vector<double> times);

  static EventClock from_durations(std::span<const double> durations);

  // N(t) = #{k : 0 < t_k <= t}.
  std::size_t count(double t) const;
  // t_k for k = 1..size().
  double event_time(std::size_t k) const;
  // A(t) = t_{N(t)+1} - t. Throws RangeError past the last event.
  double forward_recurrence(double t) const;

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  double last_time() const noexcept { return times_.empty() ? 0.0 : times_.back(); }
  const std::vector<double>& times() const noexcept { return times_; }
  bool is_simple() const;

 private:
  std::vector<double> times_;
};

// One piece of a deformation schedule. A trading piece rises as
// slope * u + amplitude * sin(2 pi u / length) over its local time u; a
// nontrading piece is flat. `jump` is added at the piece's right end.
struct DeformationPiece {
  enum class Kind { kTrading, kNontrading };

  Kind kind = Kind::kTrading;
  double length = 1.0;
  double slope = 1.0;
  double amplitude = 0.0;
  double jump = 0.0;

  double rise() const noexcept { return kind == Kind::kTrading ? slope * length : 0.0; }
  double min_slope() const noexcept;

  bool operator==(const DeformationPiece&) const = default;
};

// Piecewise time deformation f with f(0) = 0, nondecreasing and
// right-continuous. Periodic schedules repeat the piece list forever; a
// non-periodic schedule extends its last piece indefinitely.
struct DeformationSpec {
  std::vector<DeformationPiece> pieces{DeformationPiece{}};
  bool periodic = true;
  // Shift f(t) = F(t + phase) - F(phase); drawn uniformly on one period when
  // random_phase is set and the clock is built by the market.
  double phase = 0.0;
  bool random_phase = false;

  // Regularity constants.
  double min_interval = 1e-9;                                     // delta_0
  double max_nontrading = std::numeric_limits<double>::infinity();  // C_0
  double min_slope = 1e-9;                                        // delta_1
  double max_jump = std::numeric_limits<double>::infinity();      // C

  double period() const;
  // Asymptotic slope gamma = lim f(t) / t.
  double gamma() const;
  // f(t) and its right derivative (0 on nontrading pieces).
  double operator()(double t) const;
  double derivative(double t) const;
  // Left-continuous generalized inverse f^<-(u) = inf{t >= 0 : f(t) >= u}.
  double inverse(double u) const;

  // Throws ConfigError naming the first violated constraint.
  void validate() const;

  bool operator==(const DeformationSpec&) const = default;

 private:
  double raw(double t) const;
  double raw_inverse(double u) const;
};

DeformationSpec identity_deformation();
// f(t) = t + a sin(2 pi t / T), periodic with gamma = 1.
DeformationSpec intraday_seasonal_spec(double period, double amplitude, double min_slope = 1e-6);

// Uniform phase on one period, drawn from `seed`.
DeformationSpec with_random_phase(DeformationSpec spec, Seed seed);

// t_n = f^<-(tilde t_n).
EventClock deform_clock(const EventClock& base, const DeformationSpec& f);

// 256 equally spaced probes on [0, horizon - margin].
std::vector<double> default_probe_grid(double horizon, double margin, std::size_t count = 256);

// sup over probes of the replication average of A(s)^p, p in {1, 2}.
double forward_recurrence_moment(std::span<const EventClock> clocks, int p, std::span<const double> probes);

}  // namespace tickcoint
