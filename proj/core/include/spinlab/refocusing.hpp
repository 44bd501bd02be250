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

#pragma once

#include <map>
#include <span>
#include <vector>

#include "spinlab/delay_expr.hpp"
#include "spinlab/pulse_program.hpp"
#include "spinlab/spin_system.hpp"

namespace spinlab {

/// Toggling-frame bookkeeping for a run of delays and perfect pi pulses.
struct TogglingTrace {
  int spins = 0;
  /// One row per delay: the frame sign (+1/-1) of each spin during it.
  std::vector<std::vector<int>> signs;
  std::vector<double> segment_durations;
  /// t_i, indexed 0..n-1.
  std::vector<double> shift_times;
  /// t_ij, n*n row-major, symmetric, zero diagonal.
  std::vector<double> coupling_times;
  /// Like coupling_times but only counting each delay's intended pairs
  /// (a delay without intent counts every pair).
  std::vector<double> intended_coupling_times;
  /// Number of pi pulses seen by each spin.
  std::vector<int> pi_counts;
  double total_duration = 0.0;

  double shift_time(int i) const { return shift_times.at(i - 1); }
  double coupling_time(int i, int j) const { return coupling_times.at((i - 1) * spins + (j - 1)); }
  double intended_coupling_time(int i, int j) const {
    return intended_coupling_times.at((i - 1) * spins + (j - 1));
  }
  /// True when spin i ends the run inverted.
  bool inverted(int i) const { return pi_counts.at(i - 1) % 2 != 0; }
};

/// True for a 180-degree pulse about +-x or +-y.
bool is_refocusing_pulse(const PulseEvent& e);

/// Throws UnsupportedSegmentError naming the first event that is neither a
/// Delay nor a refocusing pulse.
TogglingTrace analyze(std::span<const PulseEvent> events, int n);
TogglingTrace analyze(const PulseProgram& p, int n);

/// Builds a refocused delay/pi program whose effective coupling times equal
/// `targets` (missing pairs mean zero) with every shift refocused and even pi
/// parity on every spin. Delays carry the evolving pairs as intent.
PulseProgram synthesize(const SpinSystem& sys, const std::map<SpinPair, DelayExpr>& targets);

}  // namespace spinlab
