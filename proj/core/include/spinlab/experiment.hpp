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
#include <utility>
#include <vector>

#include "spinlab/compiler.hpp"
#include "spinlab/gates.hpp"
#include "spinlab/matrix.hpp"
#include "spinlab/pulse_program.hpp"
#include "spinlab/simulator.hpp"
#include "spinlab/spin_system.hpp"

namespace spinlab {

/// Deviation density matrix in the Zeeman product basis.
using DensityMatrix = ComplexMatrix;

/// 2 * sum_i w_i I_iz.
DensityMatrix thermal_state(const SpinSystem& sys);

struct ApplyResult {
  DensityMatrix rho{2};
  bool fell_back = false;
  std::string warning;
};

/// rho -> U rho U^dag per event; gradients zero every off-diagonal entry;
/// a readout applies (pi/2)_y on its spin.
ApplyResult apply_program(const DensityMatrix& rho, const PulseProgram& p, const SpinSystem& sys, SimMode mode);

/// Keeps only the diagonal.
DensityMatrix dephase(const DensityMatrix& rho);

/// Real parts of the diagonal.
std::vector<double> populations(const DensityMatrix& rho);

struct SpectrumLine {
  int qubit = 1;
  double frequency_hz = 0.0;
  Complex amplitude;
  /// e.g. "spin2=0,spin3=1"
  std::string passive_label;
};

struct Spectrum {
  std::vector<SpectrumLine> lines;
};

/// One line per single-quantum transition of `qubit`, ordered by the passive
/// spins' basis index. The amplitude is rho[a][b] where a has the qubit's bit
/// 0 and b has it 1.
Spectrum synthesize_spectrum(const DensityMatrix& rho, const SpinSystem& sys, int qubit);

/// Sums lines of the same qubit whose frequencies lie within `window_hz` of
/// the first line of their group. Labels are joined with '|'.
Spectrum merge_degenerate(const Spectrum& s, double window_hz);

std::string format_spectrum_csv(const Spectrum& s);
std::string format_spectrum_svg(const Spectrum& s);

std::string format_density_matrix(const DensityMatrix& rho);
DensityMatrix parse_density_matrix(std::string_view text);
DensityMatrix load_density_matrix(const std::filesystem::path& path);

struct ReadoutResult {
  int qubit = 1;
  Spectrum spectrum;
};

struct ProtocolReport {
  std::string gate;
  SimMode mode = SimMode::Ideal;
  bool fell_back = false;
  PulseProgram program;
  std::vector<double> thermal_populations;
  /// Populations after the gate, before the gradient.
  std::vector<double> final_populations;
  TruthTable expected;
  std::optional<TruthTable> realized;
  bool permutation_matches = false;
  /// final[T(x)] == thermal[x] for the expected table T.
  bool populations_consistent = false;
  std::vector<ReadoutResult> readouts;

  ProtocolReport() : expected(TruthTable::identity(1)) {}
};

/// thermal -> compiled gate -> gradient -> readout(q) -> spectrum for every
/// requested qubit. The readout experiments run concurrently.
ProtocolReport run_protocol(const SpinSystem& sys, const GateRequest& gate, const std::vector<int>& readouts,
                            SimMode mode = SimMode::Ideal);

/// Nontrivial cycles of a permutation, each starting at its smallest element.
std::vector<std::vector<std::size_t>> permutation_cycles(const TruthTable& t);
/// "010<->011 100<->101", or "none".
std::string describe_cycles(const TruthTable& t);
std::string basis_label(int n, std::size_t x);

std::string format_population_report(const ProtocolReport& r);

}  // namespace spinlab
