#include "inertia/properties.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace inertia {

RIParams::RIParams(Time mu_r_in, Time delta_r_in, Time mu_f_in, Time delta_f_in)
    : mu_r(std::move(mu_r_in)),
      delta_r(std::move(delta_r_in)),
      mu_f(std::move(mu_f_in)),
      delta_f(std::move(delta_f_in)) {
  if (mu_r.sign() < 0 || mu_r > delta_r || mu_f.sign() < 0 || mu_f > delta_f)
    throw std::invalid_argument("params require 0 <= mu <= delta per edge kind");
}

AIParams::AIParams(Time d_r_in, Time d_f_in)
    : d_r(std::move(d_r_in)), d_f(std::move(d_f_in)) {
  if (d_r.sign() < 0 || d_f.sign() < 0)
    throw std::invalid_argument("dwell bounds must be non-negative");
}

namespace {

// A point of [lo, hi] where s is 0. Callers guarantee one exists.
Time zero_in(const Signal& s, const Time& lo, const Time& hi) {
  if (!s.value_at(lo)) return lo;
  const auto& ts = s.transitions();
  auto it = std::upper_bound(ts.begin(), ts.end(), lo);
  for (; it != ts.end() && *it <= hi; ++it) {
    if (!s.value_at(*it)) return *it;
  }
  return lo;
}

}  // namespace

MembershipResult ri_member(const Signal& u, const Signal& x, const RIParams& p) {
  MembershipResult res;
  const Signal not_u = bool_not(u);
  const Signal rise_ok = erode(u, p.rise_window());
  const Signal fall_ok = erode(not_u, p.fall_window());
  for (const Edge& e : x.edges()) {
    const bool rising = e.kind == EdgeKind::rising;
    if ((rising ? rise_ok : fall_ok).value_at(e.at)) continue;
    res.ok = false;
    const Time& delta = rising ? p.delta_r : p.delta_f;
    const Time& mu = rising ? p.mu_r : p.mu_f;
    const Signal& base = rising ? u : not_u;
    const Time lo = e.at - delta;
    const Time hi = lo + mu;
    res.violations.push_back(Violation{e.at, e.kind, lo, hi, zero_in(base, lo, hi)});
  }
  return res;
}

MembershipResult ai_member(const Signal& x, const AIParams& a) {
  MembershipResult res;
  const std::vector<Edge> es = x.edges();
  for (std::size_t i = 0; i + 1 < es.size(); ++i) {
    const bool rising = es[i].kind == EdgeKind::rising;
    const Time& dwell = rising ? a.d_r : a.d_f;
    const Time gap = es[i + 1].at - es[i].at;
    if (gap > dwell) continue;
    res.ok = false;
    res.violations.push_back(Violation{es[i].at, es[i].kind, es[i].at,
                                       es[i].at + dwell, es[i + 1].at});
  }
  return res;
}

bool ri_subset(const RIParams& p, const RIParams& q) {
  return p.delta_r >= q.delta_r && p.delta_r - p.mu_r <= q.delta_r - q.mu_r &&
         p.delta_f >= q.delta_f && p.delta_f - p.mu_f <= q.delta_f - q.mu_f;
}

RIParams dual_ri(const RIParams& p) {
  return RIParams(p.mu_f, p.delta_f, p.mu_r, p.delta_r);
}

std::optional<AIParams> ri_to_ai(const RIParams& p) {
  if (p.delta_f >= p.delta_r - p.mu_r && p.delta_r >= p.delta_f - p.mu_f)
    return AIParams(p.delta_f - p.delta_r + p.mu_r, p.delta_r - p.delta_f + p.mu_f);
  return std::nullopt;
}

bool ri_zeno_free(const RIParams& p) {
  return p.delta_f > p.delta_r - p.mu_r && p.delta_r > p.delta_f - p.mu_f;
}

std::optional<ZenoWitness> zeno_witness(const RIParams& p, const Time& epsilon) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  if (ri_zeno_free(p)) return std::nullopt;
  const Time pulse = epsilon / Time(2);
  if (p.delta_f <= p.delta_r - p.mu_r) {
    // Input high on (-inf, 0): the rise window stays satisfied up to
    // delta_r - mu_r and the fall window clears from delta_f on, so a pulse
    // ending at delta_f slips through at any width.
    Signal u = Signal::from_transitions(true, {Time(0)});
    Signal x = Signal::from_intervals(false, {{p.delta_f - pulse, p.delta_f}});
    return ZenoWitness{std::move(u), std::move(x)};
  }
  // Complemented construction for the symmetric failure delta_r <= delta_f - mu_f.
  Signal u = Signal::from_transitions(false, {Time(0)});
  Signal x = bool_not(Signal::from_intervals(false, {{p.delta_r - pulse, p.delta_r}}));
  return ZenoWitness{std::move(u), std::move(x)};
}

MemberPredicate ri_predicate(const RIParams& p) {
  return [p](const Signal& u, const Signal& x) { return ri_member(u, x, p).ok; };
}

bool combine_members(CombineMode mode, const std::vector<MemberPredicate>& checks,
                     const Signal& u, const Signal& x) {
  if (checks.empty()) throw std::invalid_argument("combine_members needs predicates");
  if (mode == CombineMode::intersection) {
    for (const auto& check : checks)
      if (!check(u, x)) return false;
    return true;
  }
  for (const auto& check : checks)
    if (check(u, x)) return true;
  return false;
}

namespace {

// One edge-permission requirement: the erosion of *base must be 1 at `at`
// (point demand) or throughout the 1-set of *span (span demand).
struct PointDemand {
  Time at;
  const Signal* base;
  EdgeKind kind;
  std::size_t tag = 0;
};

struct SpanDemand {
  const Signal* span;
  const Signal* base;
  EdgeKind kind;
};

struct KindProblem {
  std::vector<PointDemand> points;
  std::vector<SpanDemand> spans;
};

bool kind_satisfied(const KindProblem& k, const Time& delta, const Time& mu,
                    std::vector<Violation>* out) {
  bool ok = true;
  std::vector<std::pair<const Signal*, Signal>> cache;
  auto eroded_of = [&](const Signal* base) -> const Signal& {
    for (const auto& entry : cache)
      if (entry.first == base) return entry.second;
    cache.emplace_back(base, erode(*base, Window(delta, mu)));
    return cache.back().second;
  };
  auto record = [&](const Time& at, EdgeKind kind, const Signal& base) {
    const Time lo = at - delta;
    if (out)
      out->push_back(Violation{at, kind, lo, lo + mu, zero_in(base, lo, lo + mu)});
  };
  for (const PointDemand& d : k.points) {
    if (eroded_of(d.base).value_at(d.at)) continue;
    ok = false;
    record(d.at, d.kind, *d.base);
    if (!out) return false;
  }
  for (const SpanDemand& d : k.spans) {
    const Signal& eroded = eroded_of(d.base);
    const Signal uncovered = bool_and(*d.span, bool_not(eroded));
    if (uncovered == Signal::constant(false)) continue;
    ok = false;
    Time at = uncovered.initial_value()
                  ? (uncovered.transitions().empty() ? Time(0)
                                                     : uncovered.transitions().front() - Time(1))
                  : uncovered.transitions().front();
    record(at, d.kind, *d.base);
    if (!out) return false;
  }
  return ok;
}

// Lower bound on gamma = delta - mu, possibly strict.
struct GammaBound {
  Time value;
  bool strict;
};

bool weaker(const GammaBound& a, const GammaBound& b) {
  // a is the weaker (smaller) constraint
  if (a.value != b.value) return a.value < b.value;
  return !a.strict && b.strict;
}

// Constraint box for covering one demand with one run of the base signal:
// delta <= ub (absent = unbounded) and gamma >= lb (absent = none).
struct RunChoice {
  std::optional<Time> ub;
  std::optional<GammaBound> lb;
};

std::vector<RunChoice> run_choices_for_point(const PointDemand& d) {
  std::vector<RunChoice> out;
  for (const Run& run : d.base->runs_of(true)) {
    if (run.begin && *run.begin > d.at) continue;  // window would start after t
    RunChoice c;
    if (run.begin) c.ub = d.at - *run.begin;
    if (run.end) c.lb = GammaBound{d.at - *run.end, true};
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<RunChoice> run_choices_for_piece(const Run& piece, const Signal& base) {
  std::vector<RunChoice> out;
  for (const Run& run : base.runs_of(true)) {
    if (piece.begin) {
      if (run.begin && *run.begin > *piece.begin) continue;
    } else if (run.begin) {
      continue;  // demand reaches -inf, run does not
    }
    if (!piece.end && run.end) continue;  // demand reaches +inf, run does not
    RunChoice c;
    if (piece.begin && run.begin) c.ub = *piece.begin - *run.begin;
    if (piece.end && run.end) c.lb = GammaBound{*piece.end - *run.end, false};
    out.push_back(std::move(c));
  }
  return out;
}

GammaBound clipped_at_zero(const std::optional<GammaBound>& lb) {
  if (!lb || lb->value.sign() < 0) return GammaBound{Time(0), false};
  return *lb;
}

// Decoupled per-demand bounds: the largest delta any covering run tolerates
// and the smallest gamma any covering run requires.
struct DemandBounds {
  bool impossible = false;
  std::optional<Time> delta_ub;  // absent = unbounded
  GammaBound gamma_lb{Time(0), false};
};

DemandBounds demand_bounds(const std::vector<RunChoice>& choices) {
  DemandBounds b;
  if (choices.empty()) {
    b.impossible = true;
    return b;
  }
  bool delta_unbounded = false;
  std::optional<Time> best_ub;
  std::optional<GammaBound> best_lb;
  for (const RunChoice& c : choices) {
    if (!c.ub)
      delta_unbounded = true;
    else if (!best_ub || *c.ub > *best_ub)
      best_ub = c.ub;
    GammaBound lb = clipped_at_zero(c.lb);
    if (!best_lb || weaker(lb, *best_lb)) best_lb = lb;
  }
  if (!delta_unbounded) b.delta_ub = best_ub;
  b.gamma_lb = *best_lb;
  return b;
}

struct KindBounds {
  bool impossible = false;
  std::optional<Time> delta_ub;          // absent = unconstrained
  std::optional<GammaBound> gamma_lb;    // absent = unconstrained
  std::optional<PointDemand> blocked;    // a demand with no covering run
};

KindBounds kind_bounds(const KindProblem& k) {
  KindBounds kb;
  auto fold = [&](const DemandBounds& db, const std::optional<PointDemand>& origin) {
    if (db.impossible) {
      kb.impossible = true;
      if (!kb.blocked) kb.blocked = origin;
      return;
    }
    if (db.delta_ub && (!kb.delta_ub || *db.delta_ub < *kb.delta_ub))
      kb.delta_ub = db.delta_ub;
    if (!kb.gamma_lb || weaker(*kb.gamma_lb, db.gamma_lb)) kb.gamma_lb = db.gamma_lb;
  };
  for (const PointDemand& d : k.points) fold(demand_bounds(run_choices_for_point(d)), d);
  for (const SpanDemand& d : k.spans) {
    for (const Run& piece : d.span->runs_of(true))
      fold(demand_bounds(run_choices_for_piece(piece, *d.base)), std::nullopt);
  }
  return kb;
}

std::vector<Time> candidate_grid(const std::vector<const KindProblem*>& kinds,
                                 const Time& bound) {
  std::vector<Time> vals{Time(0), bound};
  auto add = [&](const Time& v) {
    if (v.sign() >= 0 && v <= bound) vals.push_back(v);
  };
  auto add_choices = [&](const std::vector<RunChoice>& choices) {
    for (const RunChoice& c : choices) {
      if (c.ub) add(*c.ub);
      if (c.lb) add(c.lb->value);
    }
  };
  for (const KindProblem* k : kinds) {
    for (const PointDemand& d : k->points) add_choices(run_choices_for_point(d));
    for (const SpanDemand& d : k->spans)
      for (const Run& piece : d.span->runs_of(true))
        add_choices(run_choices_for_piece(piece, *d.base));
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<Time> grid;
  grid.reserve(vals.size() * 2);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) grid.push_back(midpoint(vals[i - 1], vals[i]));
    grid.push_back(vals[i]);
  }
  return grid;
}

std::string format_gamma(const GammaBound& g) {
  std::ostringstream os;
  os << "delta - mu " << (g.strict ? "> " : ">= ") << g.value.str();
  return os.str();
}

}  // namespace

WindowSearchOutcome dominating_window(const Signal& u, const WindowDemands& demands,
                                      const Time& bound) {
  if (bound.sign() <= 0) throw std::invalid_argument("bound must be positive");
  const Signal not_u = bool_not(u);

  KindProblem rise;
  KindProblem fall;
  for (const Time& t : demands.rise_instants)
    rise.points.push_back(PointDemand{t, &u, EdgeKind::rising});
  for (const Time& t : demands.fall_instants)
    fall.points.push_back(PointDemand{t, &not_u, EdgeKind::falling});
  if (demands.rise_span)
    rise.spans.push_back(SpanDemand{&*demands.rise_span, &u, EdgeKind::rising});
  if (demands.fall_span)
    fall.spans.push_back(SpanDemand{&*demands.fall_span, &not_u, EdgeKind::falling});

  WindowSearchOutcome outcome;
  const std::vector<Time> grid = candidate_grid({&rise, &fall}, bound);
  for (auto dit = grid.rbegin(); dit != grid.rend(); ++dit) {
    const Time& delta = *dit;
    for (const Time& gamma : grid) {
      if (gamma > delta) break;
      const Time mu = delta - gamma;
      if (kind_satisfied(rise, delta, mu, nullptr) &&
          kind_satisfied(fall, delta, mu, nullptr)) {
        outcome.params = RIParams(mu, delta, mu, delta);
        std::ostringstream os;
        os << "window delta=" << delta.str() << " mu=" << mu.str()
           << " satisfies every demand";
        outcome.summary = os.str();
        return outcome;
      }
    }
  }

  // Infeasible: report the decoupled bounds each kind imposes.
  const KindBounds rb = kind_bounds(rise);
  const KindBounds fb = kind_bounds(fall);
  std::ostringstream os;
  if (rb.impossible || fb.impossible) {
    os << "a " << (rb.impossible ? "rising" : "falling")
       << " demand cannot be met by any window";
    const auto& blocked = rb.impossible ? rb.blocked : fb.blocked;
    if (blocked)
      outcome.violations.push_back(Violation{blocked->at, blocked->kind, blocked->at,
                                             blocked->at, blocked->at});
  } else {
    std::optional<Time> delta_ub;
    if (rb.delta_ub) delta_ub = rb.delta_ub;
    if (fb.delta_ub && (!delta_ub || *fb.delta_ub < *delta_ub)) delta_ub = fb.delta_ub;
    std::optional<GammaBound> gamma_lb = rb.gamma_lb;
    if (fb.gamma_lb && (!gamma_lb || weaker(*gamma_lb, *fb.gamma_lb)))
      gamma_lb = fb.gamma_lb;
    outcome.delta_max = delta_ub ? min(*delta_ub, bound) : bound;
    if (gamma_lb) {
      outcome.gamma_min = gamma_lb->value;
      outcome.gamma_min_strict = gamma_lb->strict;
    }
    os << "demands force delta <= " << outcome.delta_max->str();
    if (gamma_lb) os << " and " << format_gamma(*gamma_lb);
    os << "; no symmetric window fits";
    if (outcome.delta_max && outcome.delta_max->sign() == 0) {
      // The search collapsed to the point window; show what fails there.
      kind_satisfied(rise, Time(0), Time(0), &outcome.violations);
      kind_satisfied(fall, Time(0), Time(0), &outcome.violations);
    }
  }
  outcome.summary = os.str();
  return outcome;
}

WindowSearchOutcome dominating_window(const Signal& u, const Signal& allowed_rise,
                                      const Signal& allowed_fall, const Time& bound) {
  WindowDemands demands;
  demands.rise_span = allowed_rise;
  demands.fall_span = allowed_fall;
  return dominating_window(u, demands, bound);
}

namespace {

// Can this demand be covered at all with 0 <= gamma <= delta <= bound?
bool demand_fittable(const std::vector<RunChoice>& choices, const Time& bound) {
  for (const RunChoice& c : choices) {
    const Time delta_cap = c.ub ? min(*c.ub, bound) : bound;
    if (delta_cap.sign() < 0) continue;
    const GammaBound lb = clipped_at_zero(c.lb);
    if (lb.strict ? lb.value < delta_cap : lb.value <= delta_cap) return true;
  }
  return false;
}

// Pareto-maximal (delta, gamma) corners for one kind: delta as large as
// possible, gamma as small as possible.
std::vector<std::pair<Time, Time>> kind_frontier(const KindProblem& k, const Time& bound) {
  const std::vector<Time> grid = candidate_grid({&k}, bound);
  std::vector<std::pair<Time, Time>> frontier;
  std::optional<Time> best_gamma;
  for (auto dit = grid.rbegin(); dit != grid.rend(); ++dit) {
    const Time& delta = *dit;
    std::optional<Time> gamma_min;
    for (const Time& gamma : grid) {
      if (gamma > delta) break;
      if (kind_satisfied(k, delta, delta - gamma, nullptr)) {
        gamma_min = gamma;
        break;
      }
    }
    if (!gamma_min) continue;
    if (!best_gamma || *gamma_min < *best_gamma) {
      frontier.emplace_back(delta, *gamma_min);
      best_gamma = gamma_min;
    }
  }
  return frontier;
}

}  // namespace

FitOutcome fit_ri(const std::vector<Trace>& corpus, const Time& bound) {
  if (corpus.empty()) throw std::invalid_argument("fit_ri needs a non-empty corpus");
  if (bound.sign() <= 0) throw std::invalid_argument("bound must be positive");

  std::vector<Signal> complements;
  complements.reserve(corpus.size());
  for (const Trace& tr : corpus) complements.push_back(bool_not(tr.input));

  KindProblem rise;
  KindProblem fall;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const Edge& e : corpus[i].state.edges()) {
      if (e.kind == EdgeKind::rising)
        rise.points.push_back(PointDemand{e.at, &corpus[i].input, e.kind, i});
      else
        fall.points.push_back(PointDemand{e.at, &complements[i], e.kind, i});
    }
  }

  FitOutcome out;
  for (const KindProblem* k : {&rise, &fall}) {
    for (const PointDemand& d : k->points) {
      if (!demand_fittable(run_choices_for_point(d), bound))
        out.unfittable.push_back(UnfittableEdge{d.tag, Edge{d.at, d.kind}});
    }
  }
  if (!out.unfittable.empty()) return out;

  const auto rise_frontier = kind_frontier(rise, bound);
  const auto fall_frontier = kind_frontier(fall, bound);
  for (const auto& [dr, gr] : rise_frontier) {
    for (const auto& [df, gf] : fall_frontier)
      out.frontier.push_back(RIParams(dr - gr, dr, df - gf, df));
  }
  return out;
}

}  // namespace inertia
