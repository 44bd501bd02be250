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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinlab/matrix.hpp"
#include "spinlab/operators.hpp"

namespace spinlab {

/// Signed basis permutation: |x> -> sign[x] |mapping[x]>.
class TruthTable {
 public:
  /// Throws ArgumentError unless `mapping` is a permutation of 0..2^n-1 and
  /// every sign is +1 or -1.
  TruthTable(int n, std::vector<std::size_t> mapping, std::vector<int> sign);
  /// Unsigned permutation (all signs +1).
  TruthTable(int n, std::vector<std::size_t> mapping);

  static TruthTable identity(int n);

  int qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator()(std::size_t x) const { return mapping_.at(x); }
  int sign(std::size_t x) const { return sign_.at(x); }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }
  const std::vector<int>& signs() const noexcept { return sign_; }

  /// `this` after `first`: x -> this(first(x)).
  TruthTable after(const TruthTable& first) const;
  bool is_identity() const;
  /// Signed permutation matrix with M[mapping[x]][x] = sign[x].
  ComplexMatrix to_matrix() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_;
  std::vector<std::size_t> mapping_;
  std::vector<int> sign_;
};

/// Reads a signed permutation back out of a unitary whose entries are all
/// 0 or +-1 within `tol`; nullopt otherwise.
std::optional<TruthTable> truth_table_from_unitary(const ComplexMatrix& u, double tol = 1e-12);

/// An ideal target gate. At least one of `unitary` / `truth` is present; when
/// both are, the unitary's basis-permutation part agrees with the table.
struct GateSpec {
  std::string name;
  int qubits = 0;
  std::optional<ComplexMatrix> unitary;
  std::optional<TruthTable> truth;
  /// Per-basis-state sign for diagonal gates (empty otherwise).
  std::vector<int> phase_flags;

  /// Unitary if given, else the truth table's signed permutation matrix.
  ComplexMatrix matrix() const;
  /// Throws ArgumentError when the invariants above do not hold.
  void validate() const;
};

/// Diagonal gate with -1 on |0...0> and |1...1>; 2 <= n <= 5.
GateSpec inversion_on_equality(int n);
/// (1/sqrt 2) [[1, 1], [-1, 1]].
GateSpec pseudo_hadamard();
/// diag(1, i).
GateSpec phase_gate();
/// Standard two-qubit CNOT, control = qubit 1.
GateSpec cnot();
/// Target bit replaced by the XOR of all n bits.
GateSpec parity_gate(int n, int target);
/// Every non-control bit XORed with the control bit.
GateSpec fanout_gate(int n, int control);
/// CNOT embedded in an n-qubit register.
GateSpec cnot_gate(int n, int control, int target);

/// How the pseudo-Hadamard layer is wrapped around the parity gate.
enum class ConjugationForm {
  HPH,        ///< h_S P h_S
  HPHinv,     ///< h_S P h_S^-1 (h^-1 applied first in time)
  HinvPH,     ///< h_S^-1 P h_S
};

std::string to_string(ConjugationForm form);

struct ConjugationCandidate {
  int parity_target = 0;
  SpinSet subset;
  ConjugationForm form = ConjugationForm::HPH;
  /// Basis states x for which |<fanout(x)| G |x>| == 1.
  int matching_rows = 0;
  bool exact = false;

  std::string describe() const;
};

struct FanoutConstruction {
  GateSpec gate;
  ConjugationCandidate chosen;
  /// Every candidate tried, in search order.
  std::vector<ConjugationCandidate> tried;
};

class ConstructionMismatchError : public std::runtime_error {
 public:
  ConstructionMismatchError(const std::string& what, ConjugationCandidate closest)
      : std::runtime_error(what), closest_(closest) {}
  const ConjugationCandidate& closest() const noexcept { return closest_; }

 private:
  ConjugationCandidate closest_;
};

/// Searches pseudo-Hadamard conjugations of parity gates for one that equals
/// fanout_gate(n, 1) as a signed permutation with all signs +1. The prefix
/// subsets {1,2} and {2,3} around parity(target n) are tried first, then every
/// target, subset and form. Throws ConstructionMismatchError if none matches.
FanoutConstruction fanout_from_parity(int n = 3);

/// Fixed-format truth table listing (one row per basis state, outputs with a
/// leading '-' when the sign is -1).
std::string format_truth_table(const GateSpec& gate);

}  // namespace spinlab
