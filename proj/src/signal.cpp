#include "inertia/signal.hpp"

#include <algorithm>
#include <stdexcept>

namespace inertia {

Window::Window(Time delta_in, Time mu_in) : delta(std::move(delta_in)), mu(std::move(mu_in)) {
  if (mu.sign() < 0 || mu > delta)
    throw std::invalid_argument("window requires 0 <= mu <= delta");
}

Signal Signal::constant(bool value) {
  Signal s;
  s.initial_ = value;
  return s;
}

Signal Signal::from_transitions(bool initial, std::vector<Time> transitions) {
  for (std::size_t i = 1; i < transitions.size(); ++i) {
    if (!(transitions[i - 1] < transitions[i]))
      throw std::invalid_argument("transition times must be strictly increasing");
  }
  Signal s;
  s.initial_ = initial;
  s.transitions_ = std::move(transitions);
  return s;
}

Signal Signal::from_intervals(bool initial, const std::vector<Interval>& intervals) {
  std::vector<Time> times;
  times.reserve(intervals.size() * 2);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (iv.end && !(iv.start < *iv.end))
      throw std::invalid_argument("interval end must exceed its start");
    if (!iv.end && i + 1 != intervals.size())
      throw std::invalid_argument("only the last interval may be unbounded");
    if (i > 0) {
      const Interval& prev = intervals[i - 1];
      if (!prev.end || iv.start < *prev.end)
        throw std::invalid_argument("intervals must be ordered and disjoint");
    }
    // Touching intervals merge: equal flip instants cancel pairwise.
    if (!times.empty() && times.back() == iv.start)
      times.pop_back();
    else
      times.push_back(iv.start);
    if (iv.end) times.push_back(*iv.end);
  }
  return from_transitions(initial, std::move(times));
}

bool Signal::value_at(const Time& t) const {
  auto it = std::upper_bound(transitions_.begin(), transitions_.end(), t);
  auto flips = static_cast<std::size_t>(it - transitions_.begin());
  return initial_ ^ (flips & 1u);
}

bool Signal::left_limit(const Time& t) const {
  auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
  auto flips = static_cast<std::size_t>(it - transitions_.begin());
  return initial_ ^ (flips & 1u);
}

bool Signal::final_value() const {
  return initial_ ^ (transitions_.size() & 1u);
}

std::vector<Edge> Signal::edges() const {
  std::vector<Edge> out;
  out.reserve(transitions_.size());
  bool before = initial_;
  for (const Time& t : transitions_) {
    out.push_back(Edge{t, before ? EdgeKind::falling : EdgeKind::rising});
    before = !before;
  }
  return out;
}

std::vector<Run> Signal::runs_of(bool value) const {
  std::vector<Run> out;
  bool v = initial_;
  std::optional<Time> begin;  // nullopt = -inf
  for (const Time& t : transitions_) {
    if (v == value) out.push_back(Run{begin, t});
    begin = t;
    v = !v;
  }
  if (v == value) out.push_back(Run{begin, std::nullopt});
  return out;
}

namespace {

template <typename Op>
Signal pointwise(const Signal& x, const Signal& y, Op op) {
  bool initial = op(x.initial_value(), y.initial_value());
  std::vector<Time> merged;
  merged.reserve(x.transitions().size() + y.transitions().size());
  std::merge(x.transitions().begin(), x.transitions().end(),
             y.transitions().begin(), y.transitions().end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::vector<Time> out;
  bool cur = initial;
  for (const Time& t : merged) {
    bool v = op(x.value_at(t), y.value_at(t));
    if (v != cur) {
      out.push_back(t);
      cur = v;
    }
  }
  return Signal::from_transitions(initial, std::move(out));
}

}  // namespace

Signal bool_not(const Signal& x) {
  return Signal::from_transitions(!x.initial_value(), x.transitions());
}

Signal bool_and(const Signal& x, const Signal& y) {
  return pointwise(x, y, [](bool a, bool b) { return a && b; });
}

Signal bool_or(const Signal& x, const Signal& y) {
  return pointwise(x, y, [](bool a, bool b) { return a || b; });
}

Signal bool_xor(const Signal& x, const Signal& y) {
  return pointwise(x, y, [](bool a, bool b) { return a != b; });
}

Signal translate(const Signal& x, const Time& d) {
  std::vector<Time> shifted;
  shifted.reserve(x.transitions().size());
  for (const Time& t : x.transitions()) shifted.push_back(t + d);
  return Signal::from_transitions(x.initial_value(), std::move(shifted));
}

Signal erode(const Signal& x, const Window& w) {
  const Time gamma = w.delta - w.mu;
  bool initial = false;
  std::vector<Time> times;
  for (const Run& run : x.runs_of(true)) {
    std::optional<Time> begin =
        run.begin ? std::optional<Time>(*run.begin + w.delta) : std::nullopt;
    std::optional<Time> end =
        run.end ? std::optional<Time>(*run.end + gamma) : std::nullopt;
    if (begin && end && !(*begin < *end)) continue;  // run shorter than mu
    if (!begin)
      initial = true;
    else
      times.push_back(*begin);
    if (end) times.push_back(*end);
  }
  return Signal::from_transitions(initial, std::move(times));
}

bool dominates(const Signal& y, const Signal& x) {
  return bool_and(x, bool_not(y)) == Signal::constant(false);
}

PulseWidths min_pulse_widths(const Signal& x) {
  PulseWidths w;
  const std::vector<Edge> es = x.edges();
  for (std::size_t i = 1; i < es.size(); ++i) {
    Time width = es[i].at - es[i - 1].at;
    if (es[i].kind == EdgeKind::falling) {
      if (!w.min_high || width < *w.min_high) w.min_high = width;
    } else {
      if (!w.min_low || width < *w.min_low) w.min_low = width;
    }
  }
  return w;
}

bool equal_up_to(const Signal& a, const Signal& b, const Time& cut) {
  if (a.initial_value() != b.initial_value()) return false;
  const auto& ta = a.transitions();
  const auto& tb = b.transitions();
  auto ea = std::upper_bound(ta.begin(), ta.end(), cut);
  auto eb = std::upper_bound(tb.begin(), tb.end(), cut);
  return std::equal(ta.begin(), ea, tb.begin(), eb);
}

}  // namespace inertia
