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
#include <vector>

#include "spinlab/spin_system.hpp"

namespace spinlab {

/// One symbolic summand numerator / (denominator * J(pair)), in seconds.
struct DelayTerm {
  long long numerator = 1;
  long long denominator = 1;
  SpinPair pair;

  friend bool operator==(const DelayTerm&, const DelayTerm&) = default;
};

/// Delay duration: a numeric constant (seconds) plus symbolic terms in the
/// couplings, e.g. 1/(2*J(2,3)) - 1/(2*J(1,2)). Resolved against a SpinSystem.
class DelayExpr {
 public:
  DelayExpr() = default;

  static DelayExpr seconds(double s);
  /// numerator / (denominator * J(pair)).
  static DelayExpr coupling_fraction(long long numerator, long long denominator, SpinPair pair);

  bool is_symbolic() const noexcept { return !terms_.empty(); }
  double constant() const noexcept { return constant_; }
  const std::vector<DelayTerm>& terms() const noexcept { return terms_; }

  /// Value in seconds. Throws ArgumentError for a reference to a zero or
  /// missing coupling.
  double evaluate(const SpinSystem& sys) const;
  /// Value of a purely numeric expression; throws ArgumentError when symbolic.
  double evaluate() const;

  /// Multiplies by num/den (den > 0).
  DelayExpr scaled(long long num, long long den) const;
  /// Like terms combined (first-appearance order kept), fractions reduced,
  /// zero terms removed.
  DelayExpr normalized() const;

  DelayExpr operator-() const;
  friend DelayExpr operator+(const DelayExpr& a, const DelayExpr& b);
  friend DelayExpr operator-(const DelayExpr& a, const DelayExpr& b) { return a + (-b); }

  std::string to_string() const;
  /// Parses the grammar written by to_string(); throws ParseError (line 0).
  static DelayExpr parse(std::string_view text);

  friend bool operator==(const DelayExpr&, const DelayExpr&) = default;

 private:
  double constant_ = 0.0;
  std::vector<DelayTerm> terms_;
};

}  // namespace spinlab
