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
#include <numbers>

#include "spinlab/errors.hpp"
#include "spinlab/spin_system.hpp"
#include "test_util.hpp"

namespace spinlab {
namespace {

TEST(SpinPair, Normalizes) {
  const SpinPair p(3, 1);
  EXPECT_EQ(p.first, 1);
  EXPECT_EQ(p.second, 3);
  EXPECT_THROW(SpinPair(2, 2), ArgumentError);
}

TEST(PairSet, AllAndMembership) {
  const auto all = PairSet::all(3);
  EXPECT_EQ(all.pairs().size(), 3U);
  EXPECT_TRUE(all.contains(SpinPair(1, 3)));
  EXPECT_FALSE(all.contains(SpinPair(1, 4)));
  const PairSet one{SpinPair(2, 3)};
  EXPECT_FALSE(one.contains(SpinPair(1, 2)));
}

TEST(SpinSystem, Validation) {
  EXPECT_THROW(SpinSystem(1), ArgumentError);
  EXPECT_THROW(SpinSystem(6), ArgumentError);
  SpinSystem s(3);
  EXPECT_THROW(s.set_coupling(1, 1, 3.0), ArgumentError);
  EXPECT_THROW(s.set_weight(2, 0.0), ArgumentError);
  EXPECT_THROW(s.offset(4), ArgumentError);
  s.set_coupling(3, 1, 2.5);
  EXPECT_EQ(s.coupling(1, 3), 2.5);
}

TEST(Molecules, BuiltinsMatchPublishedParameters) {
  const auto a = molecule_a();
  EXPECT_EQ(a.coupling(1, 2), 8.1);
  EXPECT_EQ(a.coupling(1, 3), 8.1);
  EXPECT_EQ(a.coupling(2, 3), 1.47);
  EXPECT_EQ(a.offset(2) - a.offset(1), 176.0);
  EXPECT_EQ(a.offset(3) - a.offset(1), 237.0);

  const auto b = molecule_b();
  EXPECT_EQ(b.coupling(1, 2), 54.0);
  EXPECT_EQ(b.coupling(1, 3), 1.4);
  EXPECT_EQ(b.coupling(2, 3), 35.1);
  EXPECT_EQ(b.offset(2) - b.offset(1), 15755.0);
  EXPECT_EQ(b.offset(3) - b.offset(1), 20080.0);

  const auto c = molecule_c();
  EXPECT_EQ(c.coupling(1, 2), 3.84);
  EXPECT_EQ(c.coupling(2, 3), 8.01);
  EXPECT_EQ(c.coupling(1, 3), -8.1);
  EXPECT_EQ(c.offset(3) - c.offset(2), 250.0);
  // 470.59 / 500.13
  EXPECT_NEAR(c.weight(1), 0.940935357, 1e-9);
  EXPECT_EQ(c.weight(2), 1.0);
}

TEST(Molecules, FilesMatchBuiltins) {
  const auto dir = testing::data_dir() / "molecules";
  EXPECT_EQ(load_molecule(dir / "molA.spin"), molecule_a());
  EXPECT_EQ(load_molecule(dir / "molB.spin"), molecule_b());
  EXPECT_EQ(load_molecule(dir / "molC.spin"), molecule_c());
}

TEST(Molecules, FormatParseRoundTrip) {
  for (const auto& m : {molecule_a(), molecule_b(), molecule_c()}) EXPECT_EQ(parse_molecule(format_molecule(m)), m);
}

TEST(Molecules, ParseErrorsCarryLineNumbers) {
  try {
    parse_molecule("spins 3\n# comment\nj 1 2 abc\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_molecule("offset 1 2\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  EXPECT_THROW(parse_molecule("spins 3\nfrobnicate 1\n"), ParseError);
  EXPECT_THROW(parse_molecule("spins 3\nj 1 4 2.0\n"), ParseError);
}

TEST(Hamiltonian, CouplingDiagonalByHand) {
  // J12 = 8.1 on |000>: +8.1/4; on |010>: -8.1/4 (plus other pairs).
  const auto a = molecule_a();
  const auto h = coupling_hamiltonian(a);
  EXPECT_NEAR(h[0], (8.1 + 8.1 + 1.47) / 4.0, 1e-15);
  EXPECT_NEAR(h[2], (-8.1 + 8.1 - 1.47) / 4.0, 1e-15);
  const auto h23 = coupling_hamiltonian(a, PairSet{SpinPair(2, 3)});
  EXPECT_NEAR(h23[0], 1.47 / 4.0, 1e-15);
  EXPECT_NEAR(h23[4], 1.47 / 4.0, 1e-15);
  EXPECT_NEAR(h23[5], -1.47 / 4.0, 1e-15);
}

TEST(FreeEvolution, DiagonalUnitaryWithExpectedPhase) {
  const auto b = molecule_b();
  const double t = 0.0123;
  const auto u = free_evolution(b, t);
  EXPECT_TRUE(u.is_diagonal());
  EXPECT_TRUE(u.is_unitary());
  // |011>: m = (+1/2, -1/2, -1/2).
  const double e = 0.5 * b.offset(1) - 0.5 * b.offset(2) - 0.5 * b.offset(3) - 54.0 / 4 - 1.4 / 4 + 35.1 / 4;
  const Complex expected = std::exp(Complex(0.0, -2.0 * std::numbers::pi * e * t));
  EXPECT_NEAR(std::abs(u(3, 3) - expected), 0.0, 1e-12);
}

}  // namespace
}  // namespace spinlab
