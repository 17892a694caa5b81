#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "inertia/properties.hpp"
#include "inertia/signal.hpp"

namespace inertia {

// Deterministic signal transducer: a pure shift, a self-timed stage whose
// edge fires once the state has persisted throughout [t - theta, t) while the
// input commands a flip, a serial chain, or the complemented wrapper of
// another model. Models are immutable descriptions; apply() is pure.
class DelayModel {
 public:
  static DelayModel transport(Time d);                        // d >= 0
  static DelayModel self_timed(Time theta, bool state_init);  // theta > 0
  static DelayModel serial(std::vector<DelayModel> chain);    // non-empty, left to right
  static DelayModel dual(DelayModel inner);

  // Round-trippable description, e.g. "serial(transport:1,selftimed:2:0)".
  std::string describe() const;

  friend Signal apply(const DelayModel& m, const Signal& u);
  friend std::optional<RIParams> ri_envelope_of(const DelayModel& m);

 private:
  struct Transport {
    Time d;
  };
  struct SelfTimed {
    Time theta;
    bool init;
  };
  struct Serial {
    std::vector<DelayModel> chain;
  };
  struct Dual {
    std::shared_ptr<const DelayModel> inner;
  };

  using Node = std::variant<Transport, SelfTimed, Serial, Dual>;

  explicit DelayModel(Node node) : node_(std::move(node)) {}

  Node node_;
};

Signal apply(const DelayModel& m, const Signal& u);

// A window property the model is known to satisfy on every input: transport(d)
// fits point windows d back, a self-timed stage fits the instantaneous window,
// duals swap the parameter pairs. Serial chains have no general envelope.
std::optional<RIParams> ri_envelope_of(const DelayModel& m);

// Labeled set of test inputs; labels are unique.
struct Corpus {
  std::vector<std::pair<std::string, Signal>> entries;

  static Corpus of(std::vector<std::pair<std::string, Signal>> entries);
};

struct CheckFailure {
  std::string label;
  std::string detail;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckFailure> failures;
  explicit operator bool() const { return ok; }
};

using Transducer = std::function<Signal(const Signal&)>;

Transducer as_transducer(const DelayModel& m);

// Every output settles to its input's final value. A corpus-level necessary
// check, not a proof over all inputs.
CheckReport check_delay_on(const Transducer& f, const Corpus& c);
CheckReport check_delay_on(const DelayModel& m, const Corpus& c);

// f(translate(u, d)) == translate(f(u), d) for every corpus input and shift.
CheckReport check_time_invariance_on(const Transducer& f, const Corpus& c,
                                     const std::vector<Time>& shifts);
CheckReport check_time_invariance_on(const DelayModel& m, const Corpus& c,
                                     const std::vector<Time>& shifts);

// Outputs on (-inf, cut] are unchanged when the input is mutated after cut.
CheckReport check_non_anticipation_on(const Transducer& f, const Corpus& c,
                                      const Time& cut);
CheckReport check_non_anticipation_on(const DelayModel& m, const Corpus& c,
                                      const Time& cut);

}  // namespace inertia
