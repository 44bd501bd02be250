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

#include <string>
#include <string_view>

#include "spinlab/gates.hpp"
#include "spinlab/pulse_program.hpp"
#include "spinlab/spin_system.hpp"

namespace spinlab {

/// Relative tolerance under which two couplings count as equal.
inline constexpr double kEqualCouplingTolerance = 1e-9;

/// Delay giving J(pair) * t = 1/2 (or 3/2 when `inverse`), modulo 2, with
/// t >= 0 for either sign of J, split into `parts` equal pieces.
DelayExpr half_turn_delay(const SpinSystem& sys, SpinPair pair, bool inverse, int parts = 1);

/// Three spins with J12 == J13 and J23 <= J12: the two-block parallel echo.
/// Anything else goes through refocusing::synthesize.
PulseProgram compile_inversion_on_equality(const SpinSystem& sys);

/// tau/2 - pi_x(pair) - tau/2 with tau = 1/(2J) or 3/(2J).
PulseProgram compile_u2(const SpinSystem& sys, SpinPair pair, bool inverse);

/// (pi/2)_y(t) - tau/2 - pi_x(c,t) - tau/2 - (pi/2)_x(t), tau = 1/(2J_ct).
PulseProgram compile_cnot(const SpinSystem& sys, int control, int target);

/// (pi/2)_{-y} on `spin`, or its inverse (pi/2)_y.
PulseProgram compile_pseudo_hadamard(int spin, bool inverse = false);

/// Composite z rotation equal to s up to global phase; in time order
/// (pi/2)_{-y} (pi/2)_{-x} (pi/2)_y.
PulseProgram compile_phase_gate(int spin);

PulseProgram compile_parity(const SpinSystem& sys);
PulseProgram compile_fanout(const SpinSystem& sys);

/// Parity built by concatenating its sub-gate programs without simplification.
PulseProgram naive_parity_concatenation(const SpinSystem& sys);

/// Concatenates event lists; the name and note of `a` are kept.
PulseProgram concatenate(const PulseProgram& a, const PulseProgram& b);

/// A gate named on the command line: iequality, parity, fanout, identity,
/// cnot:<c>,<t> or u2:<i>,<j>[,inv].
struct GateRequest {
  enum class Kind { IEquality, Parity, Fanout, Cnot, U2, Identity };
  Kind kind = Kind::Identity;
  int first = 0;
  int second = 0;
  bool inverse = false;

  std::string to_string() const;
};

/// Throws ArgumentError on an unknown or malformed gate name.
GateRequest parse_gate_request(std::string_view text);

PulseProgram compile_gate(const SpinSystem& sys, const GateRequest& gate);

/// The ideal target of `gate` on n qubits.
GateSpec target_gate(const GateRequest& gate, int n);

}  // namespace spinlab
