#pragma once

#include <optional>
#include <vector>

#include "inertia/rational.hpp"

namespace inertia {

using Time = Rational;

enum class EdgeKind { rising, falling };

// A transition event of a signal.
struct Edge {
  Time at;
  EdgeKind kind;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Closed sliding interval [t - delta, t - delta + mu]. The side condition
// mu <= delta keeps the window at or before the reference instant t.
struct Window {
  Window(Time delta_in, Time mu_in);
  Time delta;
  Time mu;
};

// Half-open piece [start, end); an absent end means the piece is unbounded.
struct Interval {
  Time start;
  std::optional<Time> end;
};

// Maximal constancy run of a signal. An absent begin means the run extends
// from -infinity, an absent end means it extends to +infinity.
struct Run {
  std::optional<Time> begin;
  std::optional<Time> end;
};

// Eventually-constant, right-continuous binary step function of rational
// time. Stored as the value on (-inf, first transition) plus the strictly
// increasing instants where the value flips; the representation is canonical,
// so operator== is semantic equality.
class Signal {
 public:
  Signal() = default;  // constant 0

  static Signal constant(bool value);
  static Signal from_transitions(bool initial, std::vector<Time> transitions);

  // Characteristic-function constructor: the result equals `initial` outside
  // the given intervals and `!initial` on their union. Intervals must be
  // ordered and disjoint (touching ones merge); only the last may be
  // unbounded. Violations raise std::invalid_argument.
  static Signal from_intervals(bool initial, const std::vector<Interval>& intervals);

  bool initial_value() const { return initial_; }
  const std::vector<Time>& transitions() const { return transitions_; }

  bool value_at(const Time& t) const;    // right-continuous: flips count at t
  bool left_limit(const Time& t) const;  // value on (t - eps, t)
  bool final_value() const;
  std::vector<Edge> edges() const;

  // Maximal runs holding `value`, in increasing order.
  std::vector<Run> runs_of(bool value) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  bool initial_ = false;
  std::vector<Time> transitions_;
};

Signal bool_not(const Signal& x);
Signal bool_and(const Signal& x, const Signal& y);
Signal bool_or(const Signal& x, const Signal& y);
Signal bool_xor(const Signal& x, const Signal& y);

inline Signal operator~(const Signal& x) { return bool_not(x); }
inline Signal operator&(const Signal& x, const Signal& y) { return bool_and(x, y); }
inline Signal operator|(const Signal& x, const Signal& y) { return bool_or(x, y); }
inline Signal operator^(const Signal& x, const Signal& y) { return bool_xor(x, y); }

// result(t) = x(t - d): every transition shifts by +d.
Signal translate(const Signal& x, const Time& d);

// Sliding-window AND: result(t) = 1 iff x held 1 throughout the closed
// window [t - delta, t - delta + mu]. Each 1-run [s, e) of x contributes the
// run [s + delta, e + delta - mu), dropped when e - s <= mu.
Signal erode(const Signal& x, const Window& w);

// x <= y pointwise.
bool dominates(const Signal& y, const Signal& x);

struct PulseWidths {
  std::optional<Time> min_high;  // shortest interior 1-run
  std::optional<Time> min_low;   // shortest interior 0-run
};

// Widths of interior pulses (runs bounded on both sides).
PulseWidths min_pulse_widths(const Signal& x);

// Do a and b agree on (-inf, cut]?
bool equal_up_to(const Signal& a, const Signal& b, const Time& cut);

}  // namespace inertia
