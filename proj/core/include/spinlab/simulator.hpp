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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinlab/gates.hpp"
#include "spinlab/matrix.hpp"
#include "spinlab/pulse_program.hpp"
#include "spinlab/refocusing.hpp"
#include "spinlab/spin_system.hpp"

namespace spinlab {

/// ideal: each refocusing span collapses to its intended effective coupling
/// evolution (shifts off). full: every event literally, all couplings and
/// shifts on.
enum class SimMode { Ideal, Full };

std::string_view to_string(SimMode mode) noexcept;
std::optional<SimMode> parse_sim_mode(std::string_view text);

/// Rotation unitary of one pulse in an n-spin system.
ComplexMatrix pulse_unitary(const Pulse& pulse, int n);

/// exp(-i 2 pi (sum nu_i t_i I_iz + sum J_ij t_ij I_iz I_jz)) for the trace's
/// effective times.
ComplexMatrix effective_evolution(const SpinSystem& sys, const TogglingTrace& trace, bool include_shifts,
                                  bool intended_only);

struct SimStep {
  enum class Kind { Unitary, Dephase };
  Kind kind = Kind::Unitary;
  ComplexMatrix unitary{2};
};

struct LoweredProgram {
  std::vector<SimStep> steps;
  SimMode mode = SimMode::Full;
  /// Ideal mode was requested but some delay had no coupling intent.
  bool fell_back = false;
  std::string warning;
};

/// Lowers events to unitaries and dephasing steps. A readout becomes a
/// (pi/2)_y pulse on its spin.
LoweredProgram lower(const PulseProgram& p, const SpinSystem& sys, SimMode mode);

struct UnitaryResult {
  ComplexMatrix unitary{2};
  bool fell_back = false;
  std::string warning;
};

/// Product of the lowered unitaries, latest event leftmost. Gradients are
/// skipped.
UnitaryResult program_unitary(const PulseProgram& p, const SpinSystem& sys, SimMode mode);

struct ProjectorCheck {
  bool passed = false;
  /// max_x || U|x><x|U^dag - |T(x)><T(x)| ||_inf
  double max_deviation = 0.0;
  /// (1/2^n) sum_x |<T(x)|U|x>|^2
  double fidelity = 0.0;
  /// The basis permutation U follows most closely (largest entry per column),
  /// when that is a permutation.
  std::optional<TruthTable> realized;
};

ProjectorCheck check_projectors(const ComplexMatrix& u, const TruthTable& expected, double tol);

/// Mapping x -> argmax_y |U[y][x]| when it is a bijection.
std::optional<TruthTable> dominant_permutation(const ComplexMatrix& u);

}  // namespace spinlab
