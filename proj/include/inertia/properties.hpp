#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "inertia/signal.hpp"

namespace inertia {

// Sliding-window edge-permission parameters: a rising edge of the state at t
// is allowed only when the input held 1 throughout [t-delta_r, t-delta_r+mu_r],
// a falling edge only when it held 0 throughout [t-delta_f, t-delta_f+mu_f].
struct RIParams {
  RIParams(Time mu_r_in, Time delta_r_in, Time mu_f_in, Time delta_f_in);

  Time mu_r;
  Time delta_r;
  Time mu_f;
  Time delta_f;

  Window rise_window() const { return Window(delta_r, mu_r); }
  Window fall_window() const { return Window(delta_f, mu_f); }

  friend bool operator==(const RIParams&, const RIParams&) = default;
};

// Minimum dwell after a rising (d_r) and falling (d_f) edge of the state.
struct AIParams {
  AIParams(Time d_r_in, Time d_f_in);

  Time d_r;
  Time d_f;

  friend bool operator==(const AIParams&, const AIParams&) = default;
};

// Diagnostic for a failed edge-permission check: the edge, the closed window
// the reference signal had to hold through, and a point where it does not.
struct Violation {
  Time at;
  EdgeKind kind;
  Time window_lo;
  Time window_hi;
  Time witness;
};

struct MembershipResult {
  bool ok = true;
  std::vector<Violation> violations;
  explicit operator bool() const { return ok; }
};

// Does state x satisfy the window conditions against input u? One Violation
// per offending edge on failure.
MembershipResult ri_member(const Signal& u, const Signal& x, const RIParams& p);

// Does x dwell at least d_r after each rising and d_f after each falling edge?
MembershipResult ai_member(const Signal& x, const AIParams& a);

// Property-set inclusion: every state admitted under p is admitted under q.
// Holds exactly when p's windows contain q's windows for both edge kinds.
bool ri_subset(const RIParams& p, const RIParams& q);

// Swap the rise and fall parameter pairs; involution.
RIParams dual_ri(const RIParams& p);

// Dwell bounds implied by the windows, when the guard inequalities
// delta_f >= delta_r - mu_r and delta_r >= delta_f - mu_f hold.
std::optional<AIParams> ri_to_ai(const RIParams& p);

// True iff both guards hold strictly, i.e. members cannot switch twice within
// arbitrarily small gaps.
bool ri_zeno_free(const RIParams& p);

struct ZenoWitness {
  Signal input;
  Signal state;
};

// For params that are not zeno-free, a member pair whose state pulse is
// shorter than epsilon (the pulse width is fixed to epsilon/2). Returns
// nullopt when the params are zeno-free. Requires epsilon > 0.
std::optional<ZenoWitness> zeno_witness(const RIParams& p, const Time& epsilon);

enum class CombineMode { intersection, union_of };

using MemberPredicate = std::function<bool(const Signal& u, const Signal& x)>;

MemberPredicate ri_predicate(const RIParams& p);

// AND (intersection) or OR (union) of the individual membership verdicts.
// The predicate list must be non-empty.
bool combine_members(CombineMode mode, const std::vector<MemberPredicate>& checks,
                     const Signal& u, const Signal& x);

// Instants and/or spans where an edge kind must be permitted. A rise demand
// at t means the eroded input must be 1 at t; a span demand means the eroded
// input must dominate the span signal pointwise; fall demands check the
// eroded complement.
struct WindowDemands {
  std::vector<Time> rise_instants;
  std::vector<Time> fall_instants;
  std::optional<Signal> rise_span;
  std::optional<Signal> fall_span;
};

// Result of the symmetric-window search. When no window exists, delta_max /
// gamma_min report the decoupled bounds each edge kind imposes on delta and
// on gamma = delta - mu (gamma_min_strict marks a strict lower bound), and
// violations list the concrete failures at the tightest corner when the
// search collapses to delta = mu = 0.
struct WindowSearchOutcome {
  std::optional<RIParams> params;
  std::optional<Time> delta_max;
  std::optional<Time> gamma_min;
  bool gamma_min_strict = false;
  std::vector<Violation> violations;
  std::string summary;
};

// Search for symmetric params (mu, delta, mu, delta) with
// 0 <= mu <= delta <= bound whose erosions satisfy every demand. Candidates
// for delta and delta - mu are drawn from differences of the involved
// transition times plus midpoints, and every candidate is verified directly
// against the demands. Requires bound > 0.
WindowSearchOutcome dominating_window(const Signal& u, const WindowDemands& demands,
                                      const Time& bound);

WindowSearchOutcome dominating_window(const Signal& u, const Signal& allowed_rise,
                                      const Signal& allowed_fall, const Time& bound);

// An observed (input, state) pair.
struct Trace {
  Signal input;
  Signal state;
};

struct UnfittableEdge {
  std::size_t trace_index;
  Edge edge;
};

// Windows fitted to a corpus of traces: the Pareto-maximal (per edge kind)
// windows under which every trace stays a member. Larger windows mean
// tighter envelopes, and the frontier can only shrink as the corpus grows.
// Corners are drawn from the candidate grid: delta bounds are closed and
// attained exactly, while a strict delta-mu bound (an edge at or past a run
// end) has no attainable supremum and is represented by the nearest grid
// point above it.
struct FitOutcome {
  std::vector<RIParams> frontier;
  std::vector<UnfittableEdge> unfittable;
};

// Requires a non-empty corpus and bound > 0.
FitOutcome fit_ri(const std::vector<Trace>& corpus, const Time& bound);

}  // namespace inertia
