// Copyright 2026 The spinlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spinlab/compiler.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/refocusing.hpp"
#include "spinlab/simulator.hpp"
#include "test_util.hpp"

namespace spinlab {
namespace {

PulseEvent pi(SpinSelection sel, SpinAxis axis = SpinAxis::X) { return Pulse{sel, 180.0, axis}; }
PulseEvent pi(std::initializer_list<int> spins, SpinAxis axis = SpinAxis::X) {
  return pi(SpinSelection::of(SpinSet(spins)), axis);
}

PulseProgram program_of(std::vector<PulseEvent> events) {
  PulseProgram p;
  p.events = std::move(events);
  return p;
}

// Product of the pulses alone, in time order.
ComplexMatrix pulse_product(const PulseProgram& p, int n) {
  auto u = ComplexMatrix::identity(std::size_t{1} << n);
  for (const auto& e : p.events) {
    if (const auto* pulse = std::get_if<Pulse>(&e)) u = pulse_unitary(*pulse, n) * u;
  }
  return u;
}

TEST(Analyze, EchoOnAllRefocusesShiftsKeepsCouplings) {
  const double tau = 0.2;
  const auto tr = analyze(program_of({make_delay(tau / 2), pi(SpinSelection::every()), make_delay(tau / 2)}), 3);
  for (int i = 1; i <= 3; ++i) EXPECT_DOUBLE_EQ(tr.shift_time(i), 0.0);
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) EXPECT_DOUBLE_EQ(tr.coupling_time(i, j), tau);
  }
}

TEST(Analyze, SecondBlockOnlyKeepsJ23) {
  const double tau = 0.4;
  const auto q = make_delay(tau / 4);
  const auto tr = analyze(program_of({q, pi({1}), q, pi(SpinSelection::every()), q, pi({1}), q}), 3);
  EXPECT_DOUBLE_EQ(tr.coupling_time(2, 3), tau);
  EXPECT_DOUBLE_EQ(tr.coupling_time(1, 2), 0.0);
  EXPECT_DOUBLE_EQ(tr.coupling_time(1, 3), 0.0);
  for (int i = 1; i <= 3; ++i) EXPECT_DOUBLE_EQ(tr.shift_time(i), 0.0);
}

TEST(Analyze, BareDelay) {
  const auto tr = analyze(program_of({make_delay(0.3)}), 3);
  for (int i = 1; i <= 3; ++i) EXPECT_DOUBLE_EQ(tr.shift_time(i), 0.3);
  EXPECT_DOUBLE_EQ(tr.coupling_time(1, 3), 0.3);
  EXPECT_DOUBLE_EQ(tr.total_duration, 0.3);
}

TEST(Analyze, RejectsNonPiPulsesNamingTheEvent) {
  const auto p = program_of({make_delay(0.1), Pulse{SpinSelection::of(SpinSet{2}), 90.0, SpinAxis::Y}});
  try {
    analyze(p, 3);
    FAIL() << "expected UnsupportedSegmentError";
  } catch (const UnsupportedSegmentError& e) {
    EXPECT_NE(std::string(e.what()).find("event 2"), std::string::npos);
  }
  EXPECT_THROW(analyze(program_of({Gradient{}}), 3), UnsupportedSegmentError);
  EXPECT_THROW(analyze(program_of({pi({1}, SpinAxis::Z)}), 3), UnsupportedSegmentError);
}

TEST(Analyze, InvariantsOnRandomPrograms) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> t(0.0, 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    PulseProgram p;
    for (int k = 0; k < 12; ++k) {
      if (rng() % 2) p.events.push_back(make_delay(t(rng)));
      else p.events.push_back(pi(testing::random_selection(rng, 3)));
    }
    const auto tr = analyze(p, 3);
    for (int i = 1; i <= 3; ++i) {
      EXPECT_LE(std::abs(tr.shift_time(i)), tr.total_duration + 1e-15);
      double ti = 0.0;
      for (std::size_t s = 0; s < tr.signs.size(); ++s) ti += tr.signs[s][i - 1] * tr.segment_durations[s];
      EXPECT_NEAR(ti, tr.shift_time(i), 1e-15);
      for (int j = i + 1; j <= 3; ++j) {
        double tij = 0.0;
        for (std::size_t s = 0; s < tr.signs.size(); ++s) {
          tij += tr.signs[s][i - 1] * tr.signs[s][j - 1] * tr.segment_durations[s];
        }
        EXPECT_NEAR(tij, tr.coupling_time(i, j), 1e-15);
      }
    }
  }
}

// The literal unitary factors as (product of pulses) * exp(-i 2 pi H_eff).
TEST(Analyze, OracleEquivalenceWithPulseProduct) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> t(0.0, 0.05);
  const SpinAxis axes[] = {SpinAxis::X, SpinAxis::Y, SpinAxis::MinusX, SpinAxis::MinusY};
  for (int trial = 0; trial < 150; ++trial) {
    const auto sys = testing::random_system(rng);
    PulseProgram p;
    const int len = 1 + static_cast<int>(rng() % 20);
    for (int k = 0; k < len; ++k) {
      if (rng() % 2) p.events.push_back(make_delay(t(rng)));
      else p.events.push_back(pi(testing::random_selection(rng, 3), axes[rng() % 4]));
    }
    const auto tr = analyze(p, 3);
    const auto literal = program_unitary(p, sys, SimMode::Full).unitary;
    const auto predicted = pulse_product(p, 3) * effective_evolution(sys, tr, true, false);
    ASSERT_LE(max_abs_diff(literal, predicted), 1e-10) << format_program(p);
  }
}

TEST(Analyze, IEqualityPiParity) {
  const auto tr = analyze(compile_inversion_on_equality(molecule_a()), 3);
  EXPECT_EQ(tr.pi_counts, (std::vector<int>{4, 2, 2}));
  for (int i = 1; i <= 3; ++i) EXPECT_FALSE(tr.inverted(i));
}

TEST(Synthesize, MoleculeAReproducesParallelEcho) {
  const auto a = molecule_a();
  std::map<SpinPair, DelayExpr> targets;
  for (auto pr : PairSet::all(3).pairs()) targets[pr] = DelayExpr::coupling_fraction(1, 2, pr);
  const auto p = synthesize(a, targets);
  EXPECT_EQ(p.events, compile_inversion_on_equality(a).events);
  EXPECT_NEAR(total_delay(p), 1.0 / (2 * 8.1) + (1.0 / (2 * 1.47) - 1.0 / (2 * 8.1)), 1e-15);
}

TEST(Synthesize, SinglePairTwoSpinsIsAnEcho) {
  SpinSystem s(2);
  s.set_coupling(1, 2, 10.0);
  s.set_offset(2, 50.0);
  const auto p = synthesize(s, {{SpinPair(1, 2), DelayExpr::seconds(0.05)}});
  ASSERT_GE(p.events.size(), 3U);
  EXPECT_NEAR(std::get<Delay>(p.events[0]).seconds, 0.025, 1e-15);
  EXPECT_EQ(std::get<Pulse>(p.events[1]), std::get<Pulse>(pi(SpinSelection::every())));
  const auto tr = analyze(p, 2);
  EXPECT_NEAR(tr.coupling_time(1, 2), 0.05, 1e-15);
  EXPECT_DOUBLE_EQ(tr.shift_time(1), 0.0);
  EXPECT_DOUBLE_EQ(tr.shift_time(2), 0.0);
}

TEST(Synthesize, NegativeTargetRejected) {
  EXPECT_THROW(synthesize(molecule_a(), {{SpinPair(1, 2), DelayExpr::seconds(-0.1)}}), ArgumentError);
}

TEST(Synthesize, RandomTargetsRoundTripAndMatchSimulation) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> t(0.0, 0.1);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 3;
    const auto sys = testing::random_system(rng, n);
    std::map<SpinPair, DelayExpr> targets;
    for (auto pr : PairSet::all(n).pairs()) {
      if (rng() % 4) targets[pr] = DelayExpr::seconds(t(rng));
    }
    const auto p = synthesize(sys, targets);
    const auto tr = analyze(p, n);
    for (int i = 1; i <= n; ++i) {
      EXPECT_NEAR(tr.shift_time(i), 0.0, 1e-15);
      EXPECT_FALSE(tr.inverted(i));
      for (int j = i + 1; j <= n; ++j) {
        const auto it = targets.find(SpinPair(i, j));
        const double want = it == targets.end() ? 0.0 : it->second.evaluate();
        ASSERT_NEAR(tr.coupling_time(i, j), want, 1e-12);
      }
    }
    // Even parity with x-axis pulses: the literal unitary is the target
    // evolution up to a global phase.
    const auto u = program_unitary(p, sys, SimMode::Full).unitary;
    const auto target = effective_evolution(sys, tr, true, false);
    ASSERT_TRUE(equal_up_to_global_phase(u, target, 1e-10).equal);
  }
}

}  // namespace
}  // namespace spinlab
