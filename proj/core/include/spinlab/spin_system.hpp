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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinlab/matrix.hpp"
#include "spinlab/operators.hpp"

namespace spinlab {

/// Unordered spin pair, normalized so that first < second (1-based).
struct SpinPair {
  int first = 1;
  int second = 2;

  SpinPair() = default;
  SpinPair(int i, int j);

  friend auto operator<=>(const SpinPair&, const SpinPair&) = default;
};

/// Subset of the pairs {(i,j): i<j<=5}, one bit per pair.
class PairSet {
 public:
  constexpr PairSet() = default;
  PairSet(std::initializer_list<SpinPair> pairs);

  static PairSet all(int n);

  bool contains(SpinPair p) const noexcept { return (bits_ >> bit(p)) & 1U; }
  void insert(SpinPair p) noexcept { bits_ |= 1U << bit(p); }
  bool empty() const noexcept { return bits_ == 0; }
  std::vector<SpinPair> pairs() const;
  std::uint32_t bits() const noexcept { return bits_; }

  friend bool operator==(PairSet, PairSet) = default;

 private:
  static int bit(SpinPair p) noexcept { return (p.first - 1) * kMaxSpins + (p.second - 1); }
  std::uint32_t bits_ = 0;
};

/// Spin quantum number m (+1/2 or -1/2) of 1-based spin `i` in basis state `index`
/// of an n-spin space; |0> carries m = +1/2 and spin 1 is the most significant bit.
inline double magnetic_number(int n, int i, std::size_t index) noexcept {
  return ((index >> (n - i)) & 1U) ? -0.5 : 0.5;
}

/// Bit value (0 or 1) of spin `i` in basis state `index`.
inline int spin_bit(int n, int i, std::size_t index) noexcept { return static_cast<int>((index >> (n - i)) & 1U); }

/// A weakly coupled n-spin molecule: rotating-frame offsets and scalar couplings in Hz.
class SpinSystem {
 public:
  /// All offsets and couplings zero, unit weights, labels "1".."n".
  explicit SpinSystem(int n);

  int size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }

  const std::string& label(int i) const;
  double offset(int i) const;
  double coupling(int i, int j) const;
  double weight(int i) const;

  void set_label(int i, std::string label);
  void set_offset(int i, double hz);
  /// Sets J_ij = J_ji; i != j.
  void set_coupling(int i, int j, double hz);
  /// Relative gyromagnetic factor; must be > 0.
  void set_weight(int i, double factor);

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  void check_index(int i) const;

  int n_;
  std::vector<std::string> labels_;
  std::vector<double> offsets_;
  std::vector<double> couplings_;  // n*n, symmetric, zero diagonal
  std::vector<double> weights_;
};

/// Diagonal of sum_{i<j} J_ij I_iz I_jz over basis states, in Hz.
std::vector<double> coupling_hamiltonian(const SpinSystem& sys);

/// Diagonal of sum_{i<j, (i,j) in mask} J_ij I_iz I_jz, in Hz.
std::vector<double> coupling_hamiltonian(const SpinSystem& sys, PairSet mask);

/// Diagonal of sum_i nu_i I_iz, in Hz.
std::vector<double> zeeman_hamiltonian(const SpinSystem& sys);

/// exp(-i 2 pi H t) with H the masked coupling Hamiltonian plus, optionally, the Zeeman term.
ComplexMatrix free_evolution(const SpinSystem& sys, double t_seconds, bool include_shifts, PairSet coupling_mask);

/// Physical free precession: all couplings and shifts.
ComplexMatrix free_evolution(const SpinSystem& sys, double t_seconds);

// Molecule files -------------------------------------------------------------
//
// Line-oriented UTF-8, '#' starts a comment:
//   spins <n>
//   label <i> <text>
//   offset <i> <hz>
//   j <i> <j> <hz>
//   weight <i> <factor>
// `spins` must come first.

SpinSystem parse_molecule(std::string_view text);
SpinSystem load_molecule(const std::filesystem::path& path);
std::string format_molecule(const SpinSystem& sys);

/// 1-bromo-2,3-dichlorobenzene protons (inversion-on-equality experiment).
SpinSystem molecule_a();
/// 13C-labelled alanine carbons (parity experiment).
SpinSystem molecule_b();
/// 4-fluoro-6-nitrobenzofuran, 19F as spin 1 plus two protons (fanout experiment).
SpinSystem molecule_c();

}  // namespace spinlab
