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

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinlab/matrix.hpp"

namespace spinlab {

/// Largest supported spin count.
inline constexpr int kMaxSpins = 5;

/// Rotation / operator axis. Negation is an involution on this six-element set.
enum class SpinAxis : std::uint8_t { X, Y, Z, MinusX, MinusY, MinusZ };

SpinAxis negate(SpinAxis axis) noexcept;
bool is_negative(SpinAxis axis) noexcept;
/// The positive axis underlying `axis` (x for -x, ...).
SpinAxis base_axis(SpinAxis axis) noexcept;
std::string_view to_string(SpinAxis axis) noexcept;
/// Accepts x, y, z, -x, -y, -z (case-insensitive).
std::optional<SpinAxis> parse_axis(std::string_view text);

/// Set of 1-based spin indices, stored as a bitmask.
class SpinSet {
 public:
  constexpr SpinSet() = default;
  SpinSet(std::initializer_list<int> spins);

  static SpinSet all(int n);
  static constexpr SpinSet from_mask(std::uint32_t mask) {
    SpinSet s;
    s.mask_ = mask;
    return s;
  }

  bool contains(int spin) const noexcept { return spin >= 1 && spin <= 32 && ((mask_ >> (spin - 1)) & 1U); }
  void insert(int spin);
  bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept;
  /// Largest index present, 0 when empty.
  int max_index() const noexcept;
  std::uint32_t mask() const noexcept { return mask_; }
  std::vector<int> indices() const;

  friend bool operator==(SpinSet, SpinSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// 1 (x) ... (x) I_axis (x) ... (x) 1 with I_axis the spin-1/2 operator on spin `i`
/// (1-based; spin 1 is the most significant tensor factor).
ComplexMatrix single_spin_op(int n, int i, SpinAxis axis);

/// Kronecker product; throws CapacityError when the result exceeds kMaxDim.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(-i * angle * sum_{s in spins} I_{s,axis}), built as a Kronecker product
/// of 2x2 rotations. `angle` is in radians.
ComplexMatrix rotation_unitary(int n, SpinSet spins, double angle, SpinAxis axis);

/// diag(exp(-i 2 pi h[k] t)) for a diagonal Hamiltonian given in Hz.
ComplexMatrix diagonal_evolution(std::span<const double> h_diag_hz, double t_seconds);

struct PhaseComparison {
  bool equal = false;
  /// Unit scalar c with a ~= c * b; meaningful when `equal`.
  Complex phase{1.0, 0.0};
  /// max |a - c b| for the extracted c.
  double deviation = 0.0;
};

/// Tests a == c * b for a unit scalar c, with c taken from the largest-modulus
/// entry of b. Throws DegenerateComparisonError when b is numerically zero.
PhaseComparison equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

}  // namespace spinlab
