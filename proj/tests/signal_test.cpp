#include "inertia/signal.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using inertia::Edge;
using inertia::EdgeKind;
using inertia::Interval;
using inertia::PulseWidths;
using inertia::Signal;
using inertia::Time;
using inertia::Window;

Signal pulses(std::initializer_list<Interval> intervals) {
  return Signal::from_intervals(false, std::vector<Interval>(intervals));
}

// The recurring three-pulse input and its two stage outputs.
const Signal kPulseTrain = pulses({{0, 1}, {2, 3}, {4, std::nullopt}});
const Signal kStageOne = pulses({{0, 3}, {5, std::nullopt}});
const Signal kStageTwo = pulses({{0, 4}, {8, std::nullopt}});

TEST(FromIntervals, BuildsCanonicalTransitions) {
  EXPECT_EQ(kPulseTrain.transitions(),
            (std::vector<Time>{0, 1, 2, 3, 4}));
  EXPECT_FALSE(kPulseTrain.initial_value());
}

TEST(FromIntervals, EmptyMeansConstant) {
  EXPECT_EQ(Signal::from_intervals(false, {}), Signal::constant(false));
  EXPECT_EQ(Signal::from_intervals(true, {}), Signal::constant(true));
}

TEST(FromIntervals, ComplementPattern) {
  // initial=1 lists the 0-regions.
  Signal s = Signal::from_intervals(true, {{2, 3}});
  EXPECT_TRUE(s.value_at(0));
  EXPECT_FALSE(s.value_at(2));
  EXPECT_TRUE(s.value_at(3));
}

TEST(FromIntervals, TouchingIntervalsMerge) {
  EXPECT_EQ(pulses({{0, 1}, {1, 2}}), pulses({{0, 2}}));
}

TEST(FromIntervals, RejectsMalformedInput) {
  EXPECT_THROW(pulses({{1, 1}}), std::invalid_argument);
  EXPECT_THROW(pulses({{2, 3}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(pulses({{0, 2}, {1, 3}}), std::invalid_argument);
  EXPECT_THROW(Signal::from_intervals(false, {{0, std::nullopt}, {5, 6}}),
               std::invalid_argument);
}

TEST(Eval, RightContinuousAtTransitions) {
  const Signal s = pulses({{0, 1}});
  EXPECT_EQ(s.value_at(0), 1);  // closed left endpoint
  EXPECT_EQ(s.value_at(1), 0);  // open right endpoint
  EXPECT_EQ(kPulseTrain.value_at(3), 0);
}

TEST(LeftLimit, LagsAtTransitions) {
  const Signal s = pulses({{0, 1}});
  EXPECT_EQ(s.left_limit(0), 0);
  EXPECT_EQ(s.left_limit(1), 1);
  EXPECT_EQ(s.left_limit(Time(1, 2)), 1);
}

TEST(EvalLeftLimitCoherence, DiffersExactlyAtTransitions) {
  testutil::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const Signal s = testutil::random_signal(rng, 6, -6, 6);
    for (const Time& t : testutil::probe_points(s, s)) {
      const bool is_transition = std::binary_search(s.transitions().begin(),
                                                    s.transitions().end(), t);
      EXPECT_EQ(s.left_limit(t) != s.value_at(t), is_transition);
    }
  }
}

TEST(Edges, AlternateAndCarryKinds) {
  const Signal s = pulses({{0, 1}});
  EXPECT_EQ(s.edges(), (std::vector<Edge>{{0, EdgeKind::rising}, {1, EdgeKind::falling}}));
  EXPECT_TRUE(Signal::constant(true).edges().empty());
  EXPECT_EQ(kStageOne.edges(),
            (std::vector<Edge>{{0, EdgeKind::rising},
                               {3, EdgeKind::falling},
                               {5, EdgeKind::rising}}));
}

TEST(BoolOps, NotEvaluatesPointwise) {
  const Signal s = bool_not(pulses({{0, 1}}));
  EXPECT_EQ(s.value_at(-1), 1);
  EXPECT_EQ(s.value_at(0), 0);
  EXPECT_EQ(s.value_at(1), 1);
}

TEST(BoolOps, ComplementAndXorLaws) {
  testutil::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    EXPECT_EQ(bool_and(x, bool_not(x)), Signal::constant(false));
    EXPECT_EQ(bool_or(x, bool_not(x)), Signal::constant(true));
    EXPECT_EQ(bool_xor(x, x), Signal::constant(false));
    EXPECT_EQ(bool_not(bool_not(x)), x);
  }
}

TEST(BoolOps, AlgebraicLawsOnRandomTriples) {
  testutil::Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    const Signal x = testutil::random_signal(rng, 5, -6, 6);
    const Signal y = testutil::random_signal(rng, 5, -6, 6);
    const Signal z = testutil::random_signal(rng, 5, -6, 6);
    EXPECT_EQ(bool_and(x, y), bool_and(y, x));
    EXPECT_EQ(bool_or(x, y), bool_or(y, x));
    EXPECT_EQ(bool_and(bool_and(x, y), z), bool_and(x, bool_and(y, z)));
    EXPECT_EQ(bool_or(bool_or(x, y), z), bool_or(x, bool_or(y, z)));
    EXPECT_EQ(bool_not(bool_and(x, y)), bool_or(bool_not(x), bool_not(y)));
    EXPECT_EQ(bool_not(bool_or(x, y)), bool_and(bool_not(x), bool_not(y)));
    testutil::assert_canonical(bool_xor(bool_and(x, y), bool_or(y, z)));
  }
}

TEST(BoolOps, TransitionsStayWithinOperands) {
  testutil::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const Signal x = testutil::random_signal(rng, 5, -6, 6);
    const Signal y = testutil::random_signal(rng, 5, -6, 6);
    const Signal z = bool_and(x, y);
    for (const Time& t : z.transitions()) {
      const bool in_x = std::binary_search(x.transitions().begin(),
                                           x.transitions().end(), t);
      const bool in_y = std::binary_search(y.transitions().begin(),
                                           y.transitions().end(), t);
      EXPECT_TRUE(in_x || in_y);
    }
  }
}

TEST(FinalValue, SettlesAfterLastTransition) {
  EXPECT_EQ(pulses({{0, 1}}).final_value(), 0);
  EXPECT_EQ(pulses({{4, std::nullopt}}).final_value(), 1);
  EXPECT_EQ(kStageTwo.final_value(), 1);
}

TEST(Translate, ShiftsTransitions) {
  EXPECT_EQ(translate(pulses({{0, 1}}), Time(2)), pulses({{2, 3}}));
}

TEST(Translate, IdentityAndInverse) {
  testutil::Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    const Time d = testutil::random_time(rng, -5, 5);
    EXPECT_EQ(translate(x, Time(0)), x);
    EXPECT_EQ(translate(translate(x, d), -d), x);
  }
}

TEST(Erode, MatchesClosedFormOnPulseTrain) {
  // Eroding the three-pulse train: each run [s,e) maps to [s+d, e+d-m).
  struct Case {
    Time delta, mu;
    Signal expect;
  };
  const std::vector<Case> cases = {
      {1, 1, pulses({{5, std::nullopt}})},
      {2, Time(1, 2),
       pulses({{2, Time(5, 2)}, {4, Time(9, 2)}, {6, std::nullopt}})},
      {Time(1, 2), 0,
       pulses({{Time(1, 2), Time(3, 2)}, {Time(5, 2), Time(7, 2)},
               {Time(9, 2), std::nullopt}})},
  };
  for (const Case& c : cases)
    EXPECT_EQ(erode(kPulseTrain, Window(c.delta, c.mu)), c.expect);
}

TEST(Erode, ComplementClosedFormOnPulseTrain) {
  // Eroding the complement: runs (-inf,0), [1,2), [3,4) map to
  // (-inf, delta-mu), [1+delta, 2+delta-mu), [3+delta, 4+delta-mu).
  const Signal low = bool_not(kPulseTrain);
  EXPECT_EQ(erode(low, Window(1, 0)),
            Signal::from_intervals(true, {{1, 2}, {3, 4}, {5, std::nullopt}}));
  EXPECT_EQ(erode(low, Window(Time(3, 2), Time(1, 2))),
            Signal::from_intervals(
                true, {{1, Time(5, 2)}, {3, Time(9, 2)}, {5, std::nullopt}}));
  // Windows wider than the interior pulses leave only the unbounded stretch.
  EXPECT_EQ(erode(low, Window(2, 1)), Signal::from_transitions(true, {Time(1)}));
}

TEST(Erode, PointWindowIsIdentity) {
  testutil::Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    EXPECT_EQ(erode(x, Window(0, 0)), x);
  }
}

TEST(Erode, SinglePulseExample) {
  EXPECT_EQ(erode(pulses({{0, 3}}), Window(2, 1)), pulses({{2, 4}}));
}

TEST(Erode, AgreesWithBruteForce) {
  testutil::Rng rng(53);
  for (int i = 0; i < 400; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    const Window w = testutil::random_window(rng, 4);
    const Signal got = erode(x, w);
    testutil::assert_canonical(got);
    for (const Time& t : testutil::probe_points(x, got))
      ASSERT_EQ(got.value_at(t), testutil::brute_erode_at(x, w, t))
          << "window delta=" << w.delta.str() << " mu=" << w.mu.str()
          << " at t=" << t.str();
  }
}

TEST(Erode, MonotoneInWindowContainment) {
  testutil::Rng rng(59);
  for (int i = 0; i < 200; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    const Window small = testutil::random_window(rng, 3);
    // Containing window: reaches further back and ends no earlier.
    const Time extra_back = testutil::random_time(rng, 0, 2);
    const Time extra_front = testutil::random_time(rng, 0, 2);
    const Time delta = small.delta + extra_back;
    const Time gamma_small = small.delta - small.mu;
    Time gamma = gamma_small - extra_front;
    if (gamma.sign() < 0) gamma = Time(0);
    const Window big(delta, delta - gamma);
    EXPECT_TRUE(dominates(erode(x, small), erode(x, big)));
  }
}

TEST(Erode, CommutesWithTranslation) {
  testutil::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    const Window w = testutil::random_window(rng, 3);
    const Time d = testutil::random_time(rng, -5, 5);
    EXPECT_EQ(erode(translate(x, d), w), translate(erode(x, w), d));
  }
}

TEST(MinPulseWidths, CountsInteriorRunsOnly) {
  const PulseWidths a = min_pulse_widths(pulses({{0, 1}, {2, 3}}));
  EXPECT_EQ(a.min_high, Time(1));
  EXPECT_EQ(a.min_low, Time(1));

  const PulseWidths b = min_pulse_widths(Signal::constant(false));
  EXPECT_FALSE(b.min_high.has_value());
  EXPECT_FALSE(b.min_low.has_value());

  const PulseWidths c = min_pulse_widths(kStageOne);
  EXPECT_EQ(c.min_high, Time(3));
  EXPECT_EQ(c.min_low, Time(2));
}

TEST(EqualUpTo, ComparesPrefixes) {
  const Signal a = pulses({{0, 1}, {2, 3}});
  const Signal b = pulses({{0, 1}, {2, 4}});
  EXPECT_TRUE(equal_up_to(a, b, Time(2)));
  EXPECT_TRUE(equal_up_to(a, b, Time(5, 2)));
  EXPECT_FALSE(equal_up_to(a, b, Time(3)));
  EXPECT_FALSE(equal_up_to(a, bool_not(a), Time(-10)));
}

TEST(RunsOf, PartitionTheLine) {
  testutil::Rng rng(67);
  for (int i = 0; i < 100; ++i) {
    const Signal x = testutil::random_signal(rng, 6, -6, 6);
    const auto ones = x.runs_of(true);
    const auto zeros = x.runs_of(false);
    EXPECT_EQ(ones.size() + zeros.size(), x.transitions().size() + 1);
    for (const inertia::Run& run : ones) {
      if (run.begin) {
        EXPECT_TRUE(x.value_at(*run.begin));
      }
      if (run.begin && run.end) {
        EXPECT_TRUE(x.value_at(inertia::midpoint(*run.begin, *run.end)));
      }
    }
  }
}

}  // namespace
