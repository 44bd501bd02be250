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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spinlab/delay_expr.hpp"
#include "spinlab/operators.hpp"
#include "spinlab/spin_system.hpp"

namespace spinlab {

/// Spins addressed by a pulse: either the literal `all` or an explicit set.
struct SpinSelection {
  bool all = false;
  SpinSet spins;

  static SpinSelection every() { return {true, {}}; }
  static SpinSelection of(SpinSet s) { return {false, s}; }

  /// The concrete set for an n-spin system.
  SpinSet resolve(int n) const { return all ? SpinSet::all(n) : spins; }

  friend bool operator==(const SpinSelection&, const SpinSelection&) = default;
};

/// Instantaneous hard rotation exp(-i angle sum I_axis).
struct Pulse {
  SpinSelection target;
  double angle_deg = 90.0;  ///< in (-360, 360]
  SpinAxis axis = SpinAxis::X;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

/// Free evolution. `intent` lists the couplings meant to act during this delay;
/// idealized simulation requires it on every delay.
struct Delay {
  DelayExpr duration;
  double seconds = 0.0;  ///< resolved value, >= 0
  std::optional<PairSet> intent;

  /// Resolved seconds compare with a 1e-14 relative tolerance, since merged
  /// delays sum their parts while parsed ones re-evaluate the expression.
  friend bool operator==(const Delay& a, const Delay& b);
};

/// Field-gradient crusher: destroys all coherences.
struct Gradient {
  friend bool operator==(const Gradient&, const Gradient&) = default;
};

/// Readout: a (pi/2)_y pulse on one spin, followed by acquisition.
struct Readout {
  int spin = 1;

  friend bool operator==(const Readout&, const Readout&) = default;
};

using PulseEvent = std::variant<Pulse, Delay, Gradient, Readout>;

struct PulseProgram {
  std::string name;
  std::string note;
  /// Molecule file referenced by a `use` line, as written.
  std::optional<std::string> molecule;
  std::vector<PulseEvent> events;

  friend bool operator==(const PulseProgram&, const PulseProgram&) = default;
};

// Builders used by the compiler and tests.
PulseEvent make_pulse(SpinSelection target, double angle_deg, SpinAxis axis);
PulseEvent make_pulse(SpinSet spins, double angle_deg, SpinAxis axis);
/// Numeric delay, no intent.
PulseEvent make_delay(double seconds);
/// Symbolic delay resolved against `sys`.
PulseEvent make_delay(const DelayExpr& expr, const SpinSystem& sys, std::optional<PairSet> intent = std::nullopt);

/// Angle in degrees reduced into (-360, 360] by whole 720-degree turns (an exact identity).
double normalize_angle(double deg);

int pulse_count(const PulseProgram& p);
int delay_count(const PulseProgram& p);
/// Sum of all delay durations in seconds.
double total_delay(const PulseProgram& p);

/// Checks event invariants (angle range, nonnegative delays, readout only as
/// the final event, spin indices within `n` when given). Throws ArgumentError.
void validate(const PulseProgram& p, std::optional<int> n = std::nullopt);

// Text format ---------------------------------------------------------------
//
// One event per line, '#' comments, case-insensitive keywords:
//   pulse <spins> <angle-deg> <axis>     spins: `all` or `1,2`
//   delay <seconds|expr> [couple <pairs>] pairs: `all`, `none` or `1-2,2-3`
//   grad
//   readout <i>
//   use <molecule-file>
//   name <text>
//   note <text>
// Symbolic delays such as 1/(2*J(1,2)) need a molecule, supplied either as an
// argument or through `use` (resolved relative to `base_dir`).

PulseProgram parse_program(std::string_view text, const std::optional<SpinSystem>& molecule = std::nullopt,
                           const std::filesystem::path& base_dir = {});

/// Reads a `.pp` file; `use` paths are relative to the file's directory.
PulseProgram load_program(const std::filesystem::path& path, const std::optional<SpinSystem>& molecule = std::nullopt);

/// Canonical text; parse_program(format_program(p)) == p given the same molecule.
std::string format_program(const PulseProgram& p);

/// Peephole pass run to a fixed point:
///  - adjacent pulses on the same spin selection with equal angles and
///    opposite axes are removed,
///  - adjacent pulses on the same selection and axis are merged (sum of angles,
///    dropped when it is a whole number of 720-degree turns),
///  - adjacent delays with the same intent are merged and zero delays removed.
/// The program unitary is preserved exactly.
PulseProgram simplify(const PulseProgram& p);

}  // namespace spinlab
