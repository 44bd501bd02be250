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

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "spinlab/errors.hpp"
#include "spinlab/matrix.hpp"
#include "spinlab/operators.hpp"

namespace spinlab {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// exp(m) by scaling and squaring of a Taylor series; independent of the
// Kronecker construction used by the library.
ComplexMatrix expm(ComplexMatrix m) {
  int squarings = 0;
  while (m.max_abs() * static_cast<double>(m.dim()) > 0.5) {
    m *= 0.5;
    ++squarings;
  }
  ComplexMatrix sum = ComplexMatrix::identity(m.dim());
  ComplexMatrix term = ComplexMatrix::identity(m.dim());
  for (int k = 1; k < 30; ++k) {
    term = term * m;
    term *= 1.0 / k;
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Entry <r|I_axis on spin i|c> by bit inspection.
Complex brute_spin_op(int n, int i, SpinAxis axis, std::size_t r, std::size_t c) {
  const int shift = n - i;
  if (((r ^ c) & ~(std::size_t{1} << shift)) != 0) return 0.0;
  const int br = (r >> shift) & 1;
  const int bc = (c >> shift) & 1;
  Complex v = 0.0;
  switch (base_axis(axis)) {
    case SpinAxis::X:
      v = br != bc ? 0.5 : 0.0;
      break;
    case SpinAxis::Y:
      v = br == bc ? 0.0 : (br == 0 ? -0.5 * kI : 0.5 * kI);
      break;
    default:
      v = br != bc ? 0.0 : (br == 0 ? 0.5 : -0.5);
      break;
  }
  return is_negative(axis) ? -v : v;
}

TEST(ComplexMatrix, RejectsBadDimensions) {
  EXPECT_THROW(ComplexMatrix(3), ArgumentError);
  EXPECT_THROW(ComplexMatrix(1), ArgumentError);
  EXPECT_THROW(ComplexMatrix(64), CapacityError);
  EXPECT_NO_THROW(ComplexMatrix(32));
}

TEST(ComplexMatrix, PredicatesAndAlgebra) {
  const auto id = ComplexMatrix::identity(4);
  EXPECT_TRUE(id.is_unitary());
  EXPECT_TRUE(id.is_hermitian());
  EXPECT_TRUE(id.is_diagonal());
  EXPECT_EQ(id.trace(), Complex(4.0));
  ComplexMatrix m(4);
  m(0, 1) = kI;
  EXPECT_FALSE(m.is_hermitian());
  m(1, 0) = -kI;
  EXPECT_TRUE(m.is_hermitian());
  EXPECT_EQ(m.adjoint(), m);
  EXPECT_EQ(max_abs_diff(m * id, m), 0.0);
}

TEST(SpinAxis, NegationIsAnInvolution) {
  for (auto a : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z, SpinAxis::MinusX, SpinAxis::MinusY, SpinAxis::MinusZ}) {
    EXPECT_EQ(negate(negate(a)), a);
    EXPECT_NE(negate(a), a);
    EXPECT_EQ(parse_axis(to_string(a)), a);
  }
  EXPECT_EQ(parse_axis("-Y"), SpinAxis::MinusY);
  EXPECT_FALSE(parse_axis("w").has_value());
}

TEST(SingleSpinOp, OneSpinZ) {
  const auto z = single_spin_op(1, 1, SpinAxis::Z);
  EXPECT_EQ(z(0, 0), Complex(0.5));
  EXPECT_EQ(z(1, 1), Complex(-0.5));
  EXPECT_EQ(z(0, 1), Complex(0.0));
}

TEST(SingleSpinOp, ThreeSpinZOnSpinTwo) {
  const auto z = single_spin_op(3, 2, SpinAxis::Z);
  const double expected[] = {0.5, 0.5, -0.5, -0.5, 0.5, 0.5, -0.5, -0.5};
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(z(k, k), Complex(expected[k]));
  EXPECT_TRUE(z.is_diagonal());
}

TEST(SingleSpinOp, MatchesBruteForceForEveryAxis) {
  for (int n = 1; n <= 4; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (auto a : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z, SpinAxis::MinusX, SpinAxis::MinusY, SpinAxis::MinusZ}) {
        const auto op = single_spin_op(n, i, a);
        EXPECT_EQ(op.trace(), Complex(0.0));
        for (std::size_t r = 0; r < op.dim(); ++r) {
          for (std::size_t c = 0; c < op.dim(); ++c) {
            ASSERT_EQ(op(r, c), brute_spin_op(n, i, a, r, c)) << n << ' ' << i << ' ' << to_string(a);
          }
        }
        if (!is_negative(a)) EXPECT_TRUE(op.is_hermitian());
      }
    }
  }
}

TEST(SingleSpinOp, XOnSpinOneCouplesMostSignificantBit) {
  const auto x = single_spin_op(3, 1, SpinAxis::X);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) EXPECT_EQ(x(r, c), Complex((r ^ c) == 4 ? 0.5 : 0.0));
  }
}

TEST(SingleSpinOp, IndexOutOfRange) {
  EXPECT_THROW(single_spin_op(3, 0, SpinAxis::Z), ArgumentError);
  EXPECT_THROW(single_spin_op(3, 4, SpinAxis::Z), ArgumentError);
  EXPECT_THROW(single_spin_op(6, 1, SpinAxis::Z), ArgumentError);
}

TEST(Kron, IdentityAndSigns) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
  const std::vector<Complex> zd{1.0, -1.0};
  const auto z = ComplexMatrix::diagonal(zd);
  const auto zz = kron(z, z);
  const double expected[] = {1, -1, -1, 1};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(zz(k, k), Complex(expected[k]));
  EXPECT_TRUE(zz.is_diagonal());
}

TEST(Kron, CapacityError) {
  EXPECT_THROW(kron(ComplexMatrix::identity(8), ComplexMatrix::identity(8)), CapacityError);
  EXPECT_NO_THROW(kron(ComplexMatrix::identity(4), ComplexMatrix::identity(8)));
}

TEST(Rotation, MinusYQuarterTurnIsPseudoHadamardExactly) {
  const auto h = rotation_unitary(1, SpinSet{1}, kPi / 2, SpinAxis::MinusY);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(h(0, 0) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(0, 1) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 0) + r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 1) - r), 0.0, 1e-15);
}

TEST(Rotation, PiAboutXOnAllIsTensorOfMinusISigmaX) {
  const auto u = rotation_unitary(3, SpinSet{1, 2, 3}, kPi, SpinAxis::X);
  // (-i sigma_x)^{(x)3} = i sigma_x^{(x)3}: antidiagonal with entries i.
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) EXPECT_NEAR(std::abs(u(r, c) - (r + c == 7 ? kI : 0.0)), 0.0, 1e-15);
  }
}

TEST(Rotation, MatchesMatrixExponential) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const auto spins = SpinSet::from_mask(1 + rng() % ((1U << n) - 1));
    const auto axis = static_cast<SpinAxis>(rng() % 6);
    const double theta = angle(rng);
    ComplexMatrix gen(std::size_t{1} << n);
    for (int i : spins.indices()) gen += single_spin_op(n, i, axis);
    const auto expected = expm(gen * (-kI * theta));
    const auto u = rotation_unitary(n, spins, theta, axis);
    EXPECT_LT(max_abs_diff(u, expected), 1e-12);
    EXPECT_TRUE(u.is_unitary());
  }
}

TEST(Rotation, PseudoHadamardOnAllCreatesSingleQuantumPattern) {
  // h^dag (2 sum I_z) h with h = (pi/2)_{-y} on every spin: entries +1 exactly
  // where the basis labels differ in one bit.
  ComplexMatrix rho(8);
  for (int i = 1; i <= 3; ++i) rho += single_spin_op(3, i, SpinAxis::Z) * 2.0;
  const auto h = rotation_unitary(3, SpinSet{1, 2, 3}, kPi / 2, SpinAxis::MinusY);
  const auto s = h.adjoint() * rho * h;
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      const double expected = std::popcount(r ^ c) == 1 ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(s(r, c) - expected), 0.0, 1e-12);
    }
  }
}

TEST(DiagonalEvolution, PhasesAndNegativeTime) {
  const std::vector<double> h{1.0, -0.5};
  const auto u = diagonal_evolution(h, 0.25);
  EXPECT_NEAR(std::abs(u(0, 0) - std::exp(-kI * 2.0 * kPi * 0.25)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1) - std::exp(kI * 2.0 * kPi * 0.125)), 0.0, 1e-15);
  EXPECT_THROW(diagonal_evolution(h, -1.0), ArgumentError);
}

TEST(GlobalPhase, DetectsPhaseAndMismatch) {
  const auto a = rotation_unitary(2, SpinSet{1}, 0.7, SpinAxis::X);
  const Complex c = std::exp(kI * 1.3);
  const auto r = equal_up_to_global_phase(a * c, a, 1e-12);
  EXPECT_TRUE(r.equal);
  EXPECT_NEAR(std::abs(r.phase - c), 0.0, 1e-12);
  const auto b = rotation_unitary(2, SpinSet{2}, 0.7, SpinAxis::X);
  EXPECT_FALSE(equal_up_to_global_phase(a, b, 1e-9).equal);
  EXPECT_THROW(equal_up_to_global_phase(a, ComplexMatrix(4), 1e-9), DegenerateComparisonError);
}

}  // namespace
}  // namespace spinlab
