#include "inertia/models.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace inertia {

DelayModel DelayModel::transport(Time d) {
  if (d.sign() < 0) throw std::invalid_argument("transport delay must be >= 0");
  return DelayModel(Transport{std::move(d)});
}

DelayModel DelayModel::self_timed(Time theta, bool state_init) {
  if (theta.sign() <= 0) throw std::invalid_argument("self-timed theta must be > 0");
  return DelayModel(SelfTimed{std::move(theta), state_init});
}

DelayModel DelayModel::serial(std::vector<DelayModel> chain) {
  if (chain.empty()) throw std::invalid_argument("serial chain must be non-empty");
  return DelayModel(Serial{std::move(chain)});
}

DelayModel DelayModel::dual(DelayModel inner) {
  return DelayModel(Dual{std::make_shared<const DelayModel>(std::move(inner))});
}

std::string DelayModel::describe() const {
  struct Visitor {
    std::string operator()(const Transport& t) const { return "transport:" + t.d.str(); }
    std::string operator()(const SelfTimed& s) const {
      return "selftimed:" + s.theta.str() + (s.init ? ":1" : ":0");
    }
    std::string operator()(const Serial& s) const {
      std::string out = "serial(";
      for (std::size_t i = 0; i < s.chain.size(); ++i) {
        if (i > 0) out += ',';
        out += s.chain[i].describe();
      }
      return out + ")";
    }
    std::string operator()(const Dual& d) const {
      return "dual(" + d.inner->describe() + ")";
    }
  };
  return std::visit(Visitor{}, node_);
}

namespace {

// Forward scan for the self-timed stage. An edge fires at the earliest t
// where the state has held its value throughout [t - theta, t) and the input
// commands the flip at t. The state is pinned to `init` before the first
// input transition minus theta, so that is the earliest instant an edge may
// fire; a constant input yields a constant output (the state settled long
// ago).
Signal solve_self_timed(const Time& theta, bool init, const Signal& u) {
  if (u.transitions().empty()) return Signal::constant(u.initial_value());

  bool value = init;
  // Earliest instant the next edge may fire: the state must have persisted
  // throughout [t - theta, t), which after an edge at e means t >= e + theta.
  Time earliest = u.transitions().front() - theta;
  std::vector<Time> fired;
  for (;;) {
    // Earliest t >= earliest with u(t) == !value.
    std::optional<Time> at;
    if (u.value_at(earliest) == !value) {
      at = earliest;
    } else {
      const auto& ts = u.transitions();
      for (auto it = std::upper_bound(ts.begin(), ts.end(), earliest); it != ts.end();
           ++it) {
        if (u.value_at(*it) == !value) {
          at = *it;
          break;
        }
      }
    }
    if (!at) break;
    fired.push_back(*at);
    value = !value;
    earliest = *at + theta;
  }
  return Signal::from_transitions(init, std::move(fired));
}

}  // namespace

Signal apply(const DelayModel& m, const Signal& u) {
  struct Visitor {
    const Signal& u;
    Signal operator()(const DelayModel::Transport& t) const { return translate(u, t.d); }
    Signal operator()(const DelayModel::SelfTimed& s) const {
      return solve_self_timed(s.theta, s.init, u);
    }
    Signal operator()(const DelayModel::Serial& s) const {
      Signal cur = u;
      for (const DelayModel& stage : s.chain) cur = apply(stage, cur);
      return cur;
    }
    Signal operator()(const DelayModel::Dual& d) const {
      return bool_not(apply(*d.inner, bool_not(u)));
    }
  };
  return std::visit(Visitor{u}, m.node_);
}

std::optional<RIParams> ri_envelope_of(const DelayModel& m) {
  struct Visitor {
    std::optional<RIParams> operator()(const DelayModel::Transport& t) const {
      return RIParams(Time(0), t.d, Time(0), t.d);
    }
    std::optional<RIParams> operator()(const DelayModel::SelfTimed&) const {
      // Edges fire only while the input commands them at that very instant.
      return RIParams(Time(0), Time(0), Time(0), Time(0));
    }
    std::optional<RIParams> operator()(const DelayModel::Serial&) const {
      return std::nullopt;
    }
    std::optional<RIParams> operator()(const DelayModel::Dual& d) const {
      auto inner = ri_envelope_of(*d.inner);
      if (!inner) return std::nullopt;
      return dual_ri(*inner);
    }
  };
  return std::visit(Visitor{}, m.node_);
}

Corpus Corpus::of(std::vector<std::pair<std::string, Signal>> entries) {
  std::set<std::string> seen;
  for (const auto& [label, _] : entries) {
    if (!seen.insert(label).second)
      throw std::invalid_argument("duplicate corpus label: " + label);
  }
  Corpus c;
  c.entries = std::move(entries);
  return c;
}

Transducer as_transducer(const DelayModel& m) {
  return [m](const Signal& u) { return apply(m, u); };
}

CheckReport check_delay_on(const Transducer& f, const Corpus& c) {
  CheckReport report;
  for (const auto& [label, u] : c.entries) {
    const Signal x = f(u);
    if (x.final_value() == u.final_value()) continue;
    report.ok = false;
    std::ostringstream os;
    os << "final value " << x.final_value() << " differs from input's "
       << u.final_value();
    report.failures.push_back(CheckFailure{label, os.str()});
  }
  return report;
}

CheckReport check_delay_on(const DelayModel& m, const Corpus& c) {
  return check_delay_on(as_transducer(m), c);
}

CheckReport check_time_invariance_on(const Transducer& f, const Corpus& c,
                                     const std::vector<Time>& shifts) {
  CheckReport report;
  for (const auto& [label, u] : c.entries) {
    const Signal base = f(u);
    for (const Time& d : shifts) {
      if (f(translate(u, d)) == translate(base, d)) continue;
      report.ok = false;
      report.failures.push_back(
          CheckFailure{label, "output differs under shift " + d.str()});
    }
  }
  return report;
}

CheckReport check_time_invariance_on(const DelayModel& m, const Corpus& c,
                                     const std::vector<Time>& shifts) {
  return check_time_invariance_on(as_transducer(m), c, shifts);
}

namespace {

// A signal agreeing with u on (-inf, cut] and diverging after: the tail is
// replaced by a pulse at cut + 1.
Signal mutated_after(const Signal& u, const Time& cut) {
  std::vector<Time> kept;
  for (const Time& t : u.transitions()) {
    if (t <= cut) kept.push_back(t);
  }
  kept.push_back(cut + Time(1));
  kept.push_back(cut + Time(2));
  return Signal::from_transitions(u.initial_value(), std::move(kept));
}

}  // namespace

CheckReport check_non_anticipation_on(const Transducer& f, const Corpus& c,
                                      const Time& cut) {
  CheckReport report;
  for (const auto& [label, u] : c.entries) {
    const Signal v = mutated_after(u, cut);
    if (equal_up_to(f(u), f(v), cut)) continue;
    report.ok = false;
    report.failures.push_back(
        CheckFailure{label, "output prefix up to " + cut.str() +
                                " depends on the input after the cut"});
  }
  return report;
}

CheckReport check_non_anticipation_on(const DelayModel& m, const Corpus& c,
                                      const Time& cut) {
  return check_non_anticipation_on(as_transducer(m), c, cut);
}

}  // namespace inertia
