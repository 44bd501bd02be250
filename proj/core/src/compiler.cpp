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

#include "spinlab/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spinlab/errors.hpp"
#include "spinlab/operators.hpp"
#include "text_util.hpp"
#include "spinlab/refocusing.hpp"

namespace spinlab {

namespace {

void require_coupling(const SpinSystem& sys, SpinPair pair) {
  if (pair.second > sys.size()) {
    throw ArgumentError("J(" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                        ") is outside the spin system");
  }
  if (sys.coupling(pair.first, pair.second) == 0.0) {
    throw ArgumentError("J(" + std::to_string(pair.first) + "," + std::to_string(pair.second) + ") is zero");
  }
}

void require_three_spins(const SpinSystem& sys, const char* what) {
  if (sys.size() != 3) throw ArgumentError(std::string(what) + " needs a 3-spin system");
}

PulseEvent pulse(SpinSelection sel, double deg, SpinAxis axis) { return Pulse{sel, deg, axis}; }
PulseEvent pulse(std::initializer_list<int> spins, double deg, SpinAxis axis) {
  return Pulse{SpinSelection::of(SpinSet(spins)), deg, axis};
}

void append(PulseProgram& p, const PulseProgram& q) { p.events.insert(p.events.end(), q.events.begin(), q.events.end()); }

}  // namespace

DelayExpr half_turn_delay(const SpinSystem& sys, SpinPair pair, bool inverse, int parts) {
  require_coupling(sys, pair);
  const bool positive = sys.coupling(pair.first, pair.second) > 0.0;
  const long long num = positive ? (inverse ? 3 : 1) : (inverse ? -1 : -3);
  return DelayExpr::coupling_fraction(num, 2LL * parts, pair);
}

PulseProgram concatenate(const PulseProgram& a, const PulseProgram& b) {
  PulseProgram out = a;
  append(out, b);
  return out;
}

PulseProgram compile_inversion_on_equality(const SpinSystem& sys) {
  const int n = sys.size();
  PulseProgram p;
  p.name = "iequality";
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) require_coupling(sys, SpinPair(i, j));
  }

  if (n == 3) {
    const double j12 = sys.coupling(1, 2);
    const double j13 = sys.coupling(1, 3);
    const double j23 = sys.coupling(2, 3);
    const bool parallel = std::abs(j12 - j13) <= kEqualCouplingTolerance * std::max(std::abs(j12), std::abs(j13));
    if (parallel && j12 > 0.0 && j23 > 0.0 && j23 <= j12) {
      const SpinPair p12(1, 2);
      const SpinPair p23(2, 3);
      const DelayExpr half_tau1 = DelayExpr::coupling_fraction(1, 4, p12);
      const DelayExpr quarter_tau =
          (DelayExpr::coupling_fraction(1, 8, p23) - DelayExpr::coupling_fraction(1, 8, p12)).normalized();
      const auto all_pairs = PairSet::all(3);
      const PairSet only23{p23};
      p.note = "parallel echo: all couplings, then J23 alone";
      p.events = {
          make_delay(half_tau1, sys, all_pairs),  pulse(SpinSelection::every(), 180, SpinAxis::X),
          make_delay(half_tau1, sys, all_pairs),  make_delay(quarter_tau, sys, only23),
          pulse({1}, 180, SpinAxis::X),           make_delay(quarter_tau, sys, only23),
          pulse(SpinSelection::every(), 180, SpinAxis::X), make_delay(quarter_tau, sys, only23),
          pulse({1}, 180, SpinAxis::X),           make_delay(quarter_tau, sys, only23),
      };
      return p;
    }
  }

  std::map<SpinPair, DelayExpr> targets;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) targets[SpinPair(i, j)] = half_turn_delay(sys, SpinPair(i, j), false);
  }
  PulseProgram body = synthesize(sys, targets);
  body.name = p.name;
  body.note = "refocused blocks from synthesize";
  return body;
}

PulseProgram compile_u2(const SpinSystem& sys, SpinPair pair, bool inverse) {
  const DelayExpr half = half_turn_delay(sys, pair, inverse, 2);
  const PairSet intent{pair};
  PulseProgram p;
  p.name = inverse ? "u2inv" : "u2";
  p.events = {make_delay(half, sys, intent), pulse({pair.first, pair.second}, 180, SpinAxis::X),
              make_delay(half, sys, intent)};
  return p;
}

PulseProgram compile_cnot(const SpinSystem& sys, int control, int target) {
  if (control == target) throw ArgumentError("CNOT control and target must differ");
  const SpinPair pair(control, target);
  const DelayExpr half = half_turn_delay(sys, pair, false, 2);
  const PairSet intent{pair};
  PulseProgram p;
  p.name = "cnot";
  p.events = {pulse({target}, 90, SpinAxis::Y),           make_delay(half, sys, intent),
              pulse({control, target}, 180, SpinAxis::X), make_delay(half, sys, intent),
              pulse({target}, 90, SpinAxis::X)};
  return p;
}

PulseProgram compile_pseudo_hadamard(int spin, bool inverse) {
  PulseProgram p;
  p.name = inverse ? "hinv" : "h";
  p.events = {pulse({spin}, 90, inverse ? SpinAxis::Y : SpinAxis::MinusY)};
  return p;
}

PulseProgram compile_phase_gate(int spin) {
  PulseProgram p;
  p.name = "s";
  p.events = {pulse({spin}, 90, SpinAxis::MinusY), pulse({spin}, 90, SpinAxis::MinusX), pulse({spin}, 90, SpinAxis::Y)};
  return p;
}

PulseProgram compile_parity(const SpinSystem& sys) {
  require_three_spins(sys, "parity");
  const SpinPair p12(1, 2);
  const SpinPair p23(2, 3);
  const DelayExpr t1 = half_turn_delay(sys, p12, false, 2);
  const DelayExpr t2 = half_turn_delay(sys, p23, false, 2);
  const DelayExpr t3 = half_turn_delay(sys, p12, true, 2);
  const PairSet i12{p12};
  const PairSet i23{p23};
  PulseProgram p;
  p.name = "parity";
  p.note = "target qubit 3";
  p.events = {
      pulse({2}, 90, SpinAxis::MinusY),   make_delay(t1, sys, i12), pulse({1, 2}, 180, SpinAxis::X),
      make_delay(t1, sys, i12),           pulse({2}, 90, SpinAxis::MinusY), pulse({2}, 90, SpinAxis::MinusX),
      pulse({3}, 90, SpinAxis::Y),        make_delay(t2, sys, i23), pulse({2, 3}, 180, SpinAxis::X),
      make_delay(t2, sys, i23),           pulse({3}, 90, SpinAxis::X), pulse({2}, 90, SpinAxis::MinusX),
      pulse({2}, 90, SpinAxis::Y),        make_delay(t3, sys, i12), pulse({1, 2}, 180, SpinAxis::X),
      make_delay(t3, sys, i12),           pulse({2}, 90, SpinAxis::MinusY),
  };
  return p;
}

PulseProgram compile_fanout(const SpinSystem& sys) {
  require_three_spins(sys, "fanout");
  const SpinPair p12(1, 2);
  const SpinPair p23(2, 3);
  const DelayExpr t1 = half_turn_delay(sys, p12, false, 2);
  const DelayExpr t2 = half_turn_delay(sys, p23, false, 4);
  const DelayExpr t3 = half_turn_delay(sys, p12, true, 2);
  const PairSet i12{p12};
  const PairSet i23{p23};
  PulseProgram p;
  p.name = "fanout";
  p.note = "control qubit 1";
  p.events = {
      pulse({1}, 90, SpinAxis::MinusY),
      make_delay(t1, sys, i12),
      pulse({1, 2}, 180, SpinAxis::X),
      make_delay(t1, sys, i12),
      pulse({2}, 90, SpinAxis::MinusY),
      pulse({2}, 90, SpinAxis::X),
      make_delay(t2, sys, i23),
      pulse({1}, 180, SpinAxis::X),
      make_delay(t2, sys, i23),
      pulse({1, 2, 3}, 180, SpinAxis::X),
      make_delay(t2, sys, i23),
      pulse({1}, 180, SpinAxis::X),
      make_delay(t2, sys, i23),
      pulse({2}, 90, SpinAxis::Y),
      pulse({2}, 90, SpinAxis::MinusX),
      make_delay(t3, sys, i12),
      pulse({1, 2}, 180, SpinAxis::X),
      make_delay(t3, sys, i12),
      pulse({1}, 90, SpinAxis::MinusY),
  };
  return p;
}

PulseProgram naive_parity_concatenation(const SpinSystem& sys) {
  require_three_spins(sys, "parity");
  PulseProgram p;
  p.name = "parity-naive";
  append(p, compile_pseudo_hadamard(2));
  append(p, compile_u2(sys, SpinPair(1, 2), false));
  append(p, compile_phase_gate(2));
  append(p, compile_pseudo_hadamard(2));
  append(p, compile_cnot(sys, 2, 3));
  append(p, compile_pseudo_hadamard(2, true));
  append(p, compile_phase_gate(2));
  append(p, compile_u2(sys, SpinPair(1, 2), true));
  append(p, compile_pseudo_hadamard(2));
  return p;
}

std::string GateRequest::to_string() const {
  switch (kind) {
    case Kind::IEquality:
      return "iequality";
    case Kind::Parity:
      return "parity";
    case Kind::Fanout:
      return "fanout";
    case Kind::Identity:
      return "identity";
    case Kind::Cnot:
      return "cnot:" + std::to_string(first) + "," + std::to_string(second);
    case Kind::U2:
      return "u2:" + std::to_string(first) + "," + std::to_string(second) + (inverse ? ",inv" : "");
  }
  return {};
}

GateRequest parse_gate_request(std::string_view text) {
  const auto t = detail::lower(detail::trim(text));
  GateRequest g;
  if (t == "iequality") {
    g.kind = GateRequest::Kind::IEquality;
    return g;
  }
  if (t == "parity") {
    g.kind = GateRequest::Kind::Parity;
    return g;
  }
  if (t == "fanout") {
    g.kind = GateRequest::Kind::Fanout;
    return g;
  }
  if (t == "identity") return g;

  const auto colon = t.find(':');
  const auto head = t.substr(0, colon);
  if (colon == std::string::npos || (head != "cnot" && head != "u2")) {
    throw ArgumentError("unknown gate '" + std::string(text) +
                        "' (expected iequality, parity, fanout, identity, cnot:<c>,<t> or u2:<i>,<j>[,inv])");
  }
  std::vector<std::string> parts;
  std::string_view rest = std::string_view(t).substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    parts.emplace_back(detail::trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  g.kind = head == "cnot" ? GateRequest::Kind::Cnot : GateRequest::Kind::U2;
  if (g.kind == GateRequest::Kind::U2 && parts.size() == 3 && parts[2] == "inv") {
    g.inverse = true;
    parts.pop_back();
  }
  if (parts.size() != 2) throw ArgumentError("gate '" + std::string(text) + "' needs two spin indices");
  const auto a = detail::parse_int(parts[0]);
  const auto b = detail::parse_int(parts[1]);
  if (!a || !b || *a < 1 || *b < 1 || *a > kMaxSpins || *b > kMaxSpins || *a == *b) {
    throw ArgumentError("gate '" + std::string(text) + "' has invalid spin indices");
  }
  g.first = static_cast<int>(*a);
  g.second = static_cast<int>(*b);
  return g;
}

PulseProgram compile_gate(const SpinSystem& sys, const GateRequest& gate) {
  switch (gate.kind) {
    case GateRequest::Kind::IEquality:
      return compile_inversion_on_equality(sys);
    case GateRequest::Kind::Parity:
      return compile_parity(sys);
    case GateRequest::Kind::Fanout:
      return compile_fanout(sys);
    case GateRequest::Kind::Cnot:
      return compile_cnot(sys, gate.first, gate.second);
    case GateRequest::Kind::U2:
      return compile_u2(sys, SpinPair(gate.first, gate.second), gate.inverse);
    case GateRequest::Kind::Identity:
      break;
  }
  PulseProgram p;
  p.name = "identity";
  return p;
}

GateSpec target_gate(const GateRequest& gate, int n) {
  switch (gate.kind) {
    case GateRequest::Kind::IEquality:
      return inversion_on_equality(n);
    case GateRequest::Kind::Parity:
      if (n != 3) throw ArgumentError("parity needs 3 qubits");
      return parity_gate(3, 3);
    case GateRequest::Kind::Fanout:
      if (n != 3) throw ArgumentError("fanout needs 3 qubits");
      return fanout_gate(3, 1);
    case GateRequest::Kind::Cnot:
      return cnot_gate(n, gate.first, gate.second);
    case GateRequest::Kind::U2: {
      if (std::max(gate.first, gate.second) > n) throw ArgumentError("u2 spin index beyond n");
      // exp(-i 2 pi (J tau) I_iz I_jz) with J tau = 1/2 or 3/2.
      const double turns = gate.inverse ? 1.5 : 0.5;
      std::vector<double> h(std::size_t{1} << n);
      for (std::size_t x = 0; x < h.size(); ++x) {
        h[x] = turns * magnetic_number(n, gate.first, x) * magnetic_number(n, gate.second, x);
      }
      GateSpec g;
      g.name = gate.to_string();
      g.qubits = n;
      g.unitary = diagonal_evolution(h, 1.0);
      g.truth = TruthTable::identity(n);
      return g;
    }
    case GateRequest::Kind::Identity:
      break;
  }
  GateSpec g;
  g.name = "identity";
  g.qubits = n;
  g.unitary = ComplexMatrix::identity(std::size_t{1} << n);
  g.truth = TruthTable::identity(n);
  return g;
}

}  // namespace spinlab
