#pragma once

// Shared randomized generators and independent oracles for the test suites.
// The oracles only use value_at() so they stay independent of the run-based
// implementations they cross-check.

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "inertia/properties.hpp"
#include "inertia/signal.hpp"

namespace testutil {

using inertia::EdgeKind;
using inertia::RIParams;
using inertia::Run;
using inertia::Signal;
using inertia::Time;
using inertia::Window;

using Rng = std::mt19937;

inline Time random_time(Rng& rng, int lo, int hi) {
  static const std::int64_t dens[] = {1, 2, 3, 4, 8};
  std::uniform_int_distribution<std::size_t> den_pick(0, std::size(dens) - 1);
  const std::int64_t den = dens[den_pick(rng)];
  std::uniform_int_distribution<std::int64_t> num_pick(lo * den, hi * den);
  return Time(num_pick(rng), den);
}

inline Signal random_signal(Rng& rng, int max_transitions, int lo, int hi) {
  std::uniform_int_distribution<int> count_pick(0, max_transitions);
  std::bernoulli_distribution coin;
  std::vector<Time> times;
  const int count = count_pick(rng);
  for (int i = 0; i < count; ++i) times.push_back(random_time(rng, lo, hi));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return Signal::from_transitions(coin(rng), std::move(times));
}

inline Window random_window(Rng& rng, int hi) {
  Time a = random_time(rng, 0, hi);
  Time b = random_time(rng, 0, hi);
  return a < b ? Window(b, a) : Window(a, b);
}

inline RIParams random_params(Rng& rng, int hi) {
  Window rise = random_window(rng, hi);
  Window fall = random_window(rng, hi);
  return RIParams(rise.mu, rise.delta, fall.mu, fall.delta);
}

inline void assert_canonical(const Signal& s) {
  const auto& ts = s.transitions();
  for (std::size_t i = 1; i < ts.size(); ++i) ASSERT_LT(ts[i - 1], ts[i]);
}

// Does x equal `value` throughout the closed interval [lo, hi]? Pointwise
// check over the interval ends, every transition inside, and the midpoints
// between consecutive sample points.
inline bool holds_throughout(const Signal& x, bool value, const Time& lo, const Time& hi) {
  std::vector<Time> samples{lo, hi};
  for (const Time& t : x.transitions())
    if (lo < t && t < hi) samples.push_back(t);
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  std::vector<Time> probes = samples;
  for (std::size_t i = 1; i < samples.size(); ++i)
    probes.push_back(inertia::midpoint(samples[i - 1], samples[i]));
  return std::all_of(probes.begin(), probes.end(),
                     [&](const Time& t) { return x.value_at(t) == value; });
}

// Brute-force erosion: the window condition evaluated directly at t.
inline bool brute_erode_at(const Signal& x, const Window& w, const Time& t) {
  const Time lo = t - w.delta;
  return holds_throughout(x, true, lo, lo + w.mu);
}

// Instants at which two signals should be compared: all breakpoints of both,
// midpoints between consecutive ones, and points outside the breakpoint span.
inline std::vector<Time> probe_points(const Signal& a, const Signal& b) {
  std::vector<Time> pts;
  pts.insert(pts.end(), a.transitions().begin(), a.transitions().end());
  pts.insert(pts.end(), b.transitions().begin(), b.transitions().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return {Time(0)};
  std::vector<Time> out;
  out.push_back(pts.front() - Time(1));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) out.push_back(inertia::midpoint(pts[i - 1], pts[i]));
    out.push_back(pts[i]);
  }
  out.push_back(pts.back() + Time(1));
  return out;
}

// A state whose every edge lands where the corresponding erosion of u is 1,
// so it is a member under p by construction.
inline Signal random_member_state(Rng& rng, const Signal& u, const RIParams& p,
                                  int max_edges) {
  const Signal rise_ok = erode(u, p.rise_window());
  const Signal fall_ok = erode(bool_not(u), p.fall_window());
  std::bernoulli_distribution coin;
  std::uniform_int_distribution<int> eighth(1, 7);

  bool value = coin(rng);
  const bool initial = value;
  std::optional<Time> cursor;
  std::vector<Time> edges;
  std::uniform_int_distribution<int> edge_pick(0, max_edges);
  const int want = edge_pick(rng);
  for (int k = 0; k < want; ++k) {
    const Signal& need = value ? fall_ok : rise_ok;
    // Runs of `need` that still have room after the cursor.
    std::vector<Run> usable;
    for (const Run& run : need.runs_of(true)) {
      if (cursor && run.end && !(*cursor < *run.end)) continue;
      usable.push_back(run);
    }
    if (usable.empty()) break;
    std::uniform_int_distribution<std::size_t> run_pick(0, usable.size() - 1);
    const Run& run = usable[run_pick(rng)];

    Time lo = run.begin ? *run.begin
                        : (run.end ? *run.end - Time(8) : Time(-8));
    bool strictly_after = false;
    if (cursor && !(lo > *cursor)) {
      lo = *cursor;  // sample strictly after the cursor inside the run
      strictly_after = true;
    }
    const Time hi = run.end ? *run.end : lo + Time(8);
    const int j = strictly_after ? eighth(rng) : eighth(rng) - 1;
    const Time t = lo + (hi - lo) * Time(j, 8);
    edges.push_back(t);
    cursor = t;
    value = !value;
  }
  return Signal::from_transitions(initial, std::move(edges));
}

}  // namespace testutil
