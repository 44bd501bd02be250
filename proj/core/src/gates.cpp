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

#include "spinlab/gates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinlab/errors.hpp"

namespace spinlab {
namespace {

void check_qubits(int n) {
  if (n < 2 || n > kMaxSpins) throw ArgumentError("gate needs 2..5 qubits, got " + std::to_string(n));
}

void check_qubit_index(int n, int q, const char* what) {
  if (q < 1 || q > n) throw ArgumentError(std::string(what) + " qubit " + std::to_string(q) + " out of range");
}

std::size_t bit_mask(int n, int q) { return std::size_t{1} << (n - q); }

std::string bits(int n, std::size_t x) {
  std::string s;
  for (int q = 1; q <= n; ++q) s += (x & bit_mask(n, q)) ? '1' : '0';
  return s;
}

GateSpec from_truth(std::string name, TruthTable table) {
  GateSpec g;
  g.name = std::move(name);
  g.qubits = table.qubits();
  g.truth = std::move(table);
  return g;
}

ComplexMatrix hadamard_layer(int n, SpinSet subset) {
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexMatrix h(2, {r, r, -r, r});
  ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix out = subset.contains(1) ? h : id;
  for (int q = 2; q <= n; ++q) out = kron(out, subset.contains(q) ? h : id);
  return out;
}

}  // namespace

TruthTable::TruthTable(int n, std::vector<std::size_t> mapping, std::vector<int> sign)
    : n_(n), mapping_(std::move(mapping)), sign_(std::move(sign)) {
  if (n < 1 || n > kMaxSpins) throw ArgumentError("truth table needs 1..5 qubits");
  const std::size_t dim = std::size_t{1} << n;
  if (mapping_.size() != dim || sign_.size() != dim) throw ArgumentError("truth table size must be 2^n");
  std::vector<bool> seen(dim, false);
  for (std::size_t x = 0; x < dim; ++x) {
    if (mapping_[x] >= dim || seen[mapping_[x]]) throw ArgumentError("truth table mapping is not a permutation");
    seen[mapping_[x]] = true;
    if (sign_[x] != 1 && sign_[x] != -1) throw ArgumentError("truth table signs must be +1 or -1");
  }
}

TruthTable::TruthTable(int n, std::vector<std::size_t> mapping)
    : TruthTable(n, mapping, std::vector<int>(mapping.size(), 1)) {}

TruthTable TruthTable::identity(int n) {
  std::vector<std::size_t> m(std::size_t{1} << n);
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = x;
  return TruthTable(n, std::move(m));
}

TruthTable TruthTable::after(const TruthTable& first) const {
  if (first.n_ != n_) throw ArgumentError("truth table qubit counts differ");
  std::vector<std::size_t> m(size());
  std::vector<int> s(size());
  for (std::size_t x = 0; x < size(); ++x) {
    m[x] = mapping_[first.mapping_[x]];
    s[x] = first.sign_[x] * sign_[first.mapping_[x]];
  }
  return TruthTable(n_, std::move(m), std::move(s));
}

bool TruthTable::is_identity() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (mapping_[x] != x || sign_[x] != 1) return false;
  return true;
}

ComplexMatrix TruthTable::to_matrix() const {
  ComplexMatrix m(size());
  for (std::size_t x = 0; x < size(); ++x) m(mapping_[x], x) = static_cast<double>(sign_[x]);
  return m;
}

std::optional<TruthTable> truth_table_from_unitary(const ComplexMatrix& u, double tol) {
  const std::size_t dim = u.dim();
  std::vector<std::size_t> mapping(dim);
  std::vector<int> sign(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    int hits = 0;
    for (std::size_t y = 0; y < dim; ++y) {
      const Complex v = u(y, x);
      if (std::abs(v) <= tol) continue;
      if (std::abs(v.imag()) > tol || std::abs(std::abs(v.real()) - 1.0) > tol) return std::nullopt;
      mapping[x] = y;
      sign[x] = v.real() > 0 ? 1 : -1;
      ++hits;
    }
    if (hits != 1) return std::nullopt;
  }
  try {
    return TruthTable(u.spin_count(), std::move(mapping), std::move(sign));
  } catch (const ArgumentError&) {
    return std::nullopt;
  }
}

ComplexMatrix GateSpec::matrix() const {
  if (unitary) return *unitary;
  if (truth) return truth->to_matrix();
  throw ArgumentError("gate '" + name + "' has neither unitary nor truth table");
}

void GateSpec::validate() const {
  if (!unitary && !truth) throw ArgumentError("gate '" + name + "' has neither unitary nor truth table");
  if (unitary && !unitary->is_unitary(1e-12)) throw ArgumentError("gate '" + name + "' matrix is not unitary");
  if (unitary && truth) {
    for (std::size_t x = 0; x < truth->size(); ++x) {
      if (std::abs(std::abs((*unitary)((*truth)(x), x)) - 1.0) > 1e-12) {
        throw ArgumentError("gate '" + name + "' unitary disagrees with its truth table");
      }
    }
  }
}

GateSpec inversion_on_equality(int n) {
  check_qubits(n);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<int> flags(dim, 1);
  flags.front() = -1;
  flags.back() = -1;
  std::vector<Complex> diag(flags.begin(), flags.end());
  std::vector<std::size_t> identity(dim);
  for (std::size_t x = 0; x < dim; ++x) identity[x] = x;

  GateSpec g;
  g.name = "iequality";
  g.qubits = n;
  g.unitary = ComplexMatrix::diagonal(diag);
  g.truth = TruthTable(n, std::move(identity), flags);
  g.phase_flags = std::move(flags);
  return g;
}

GateSpec pseudo_hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  GateSpec g;
  g.name = "h";
  g.qubits = 1;
  g.unitary = ComplexMatrix(2, {r, r, -r, r});
  return g;
}

GateSpec phase_gate() {
  GateSpec g;
  g.name = "s";
  g.qubits = 1;
  g.unitary = ComplexMatrix(2, {1.0, 0.0, 0.0, Complex{0.0, 1.0}});
  g.phase_flags = {1, 1};
  return g;
}

GateSpec cnot() {
  GateSpec g = cnot_gate(2, 1, 2);
  g.unitary = g.truth->to_matrix();
  return g;
}

GateSpec cnot_gate(int n, int control, int target) {
  check_qubits(n);
  check_qubit_index(n, control, "control");
  check_qubit_index(n, target, "target");
  if (control == target) throw ArgumentError("CNOT control and target must differ");
  std::vector<std::size_t> m(std::size_t{1} << n);
  for (std::size_t x = 0; x < m.size(); ++x) {
    m[x] = (x & bit_mask(n, control)) ? x ^ bit_mask(n, target) : x;
  }
  return from_truth("cnot", TruthTable(n, std::move(m)));
}

GateSpec parity_gate(int n, int target) {
  check_qubits(n);
  check_qubit_index(n, target, "target");
  std::vector<std::size_t> m(std::size_t{1} << n);
  for (std::size_t x = 0; x < m.size(); ++x) {
    const bool odd = std::popcount(x) % 2 == 1;
    const std::size_t t = bit_mask(n, target);
    m[x] = odd ? (x | t) : (x & ~t);
  }
  return from_truth("parity", TruthTable(n, std::move(m)));
}

GateSpec fanout_gate(int n, int control) {
  check_qubits(n);
  check_qubit_index(n, control, "control");
  const std::size_t all = (std::size_t{1} << n) - 1;
  const std::size_t c = bit_mask(n, control);
  std::vector<std::size_t> m(std::size_t{1} << n);
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = (x & c) ? x ^ (all & ~c) : x;
  return from_truth("fanout", TruthTable(n, std::move(m)));
}

std::string to_string(ConjugationForm form) {
  switch (form) {
    case ConjugationForm::HPH: return "h.P.h";
    case ConjugationForm::HPHinv: return "h.P.h^-1";
    case ConjugationForm::HinvPH: return "h^-1.P.h";
  }
  return "?";
}

std::string ConjugationCandidate::describe() const {
  std::ostringstream out;
  out << "parity(target=" << parity_target << ") conjugated as " << to_string(form) << " on qubits {";
  const auto idx = subset.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? "," : "") << idx[k];
  out << "}: " << matching_rows << " rows match" << (exact ? " (exact)" : "");
  return out.str();
}

FanoutConstruction fanout_from_parity(int n) {
  check_qubits(n);
  const TruthTable want = *fanout_gate(n, 1).truth;
  const std::size_t dim = std::size_t{1} << n;

  std::vector<ConjugationCandidate> order;
  const ConjugationForm forms[] = {ConjugationForm::HPH, ConjugationForm::HPHinv, ConjugationForm::HinvPH};
  // Prefix subsets around parity(target n) first.
  for (SpinSet s : {SpinSet{1, 2}, SpinSet{2, 3}}) {
    if (s.max_index() > n) continue;
    for (auto f : forms) order.push_back({n, s, f, 0, false});
  }
  for (int target = 1; target <= n; ++target) {
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      for (auto f : forms) {
        ConjugationCandidate c{target, SpinSet::from_mask(mask), f, 0, false};
        const bool dup = std::any_of(order.begin(), order.end(), [&](const ConjugationCandidate& o) {
          return o.parity_target == c.parity_target && o.subset == c.subset && o.form == c.form;
        });
        if (!dup) order.push_back(c);
      }
    }
  }

  std::optional<std::size_t> chosen;
  std::optional<ComplexMatrix> chosen_matrix;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& c = order[k];
    const ComplexMatrix p = parity_gate(n, c.parity_target).truth->to_matrix();
    const ComplexMatrix h = hadamard_layer(n, c.subset);
    const ComplexMatrix hinv = h.adjoint();
    ComplexMatrix g = c.form == ConjugationForm::HPH      ? h * p * h
                      : c.form == ConjugationForm::HPHinv ? h * p * hinv
                                                          : hinv * p * h;
    for (std::size_t x = 0; x < dim; ++x)
      if (std::abs(std::abs(g(want(x), x)) - 1.0) <= 1e-12) ++c.matching_rows;
    const auto table = truth_table_from_unitary(g);
    c.exact = table && *table == want;
    if (c.exact && !chosen) {
      chosen = k;
      chosen_matrix = std::move(g);
    }
  }

  if (!chosen) {
    const auto best = std::max_element(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.matching_rows < b.matching_rows;
    });
    throw ConstructionMismatchError("no pseudo-Hadamard conjugation of a parity gate reproduces fanout; closest: " +
                                        best->describe(),
                                    *best);
  }

  FanoutConstruction out;
  out.gate.name = "fanout_from_parity";
  out.gate.qubits = n;
  out.gate.unitary = std::move(chosen_matrix);
  out.gate.truth = want;
  out.chosen = order[*chosen];
  out.tried = std::move(order);
  return out;
}

std::string format_truth_table(const GateSpec& gate) {
  if (!gate.truth) throw ArgumentError("gate '" + gate.name + "' has no truth table");
  const TruthTable& t = *gate.truth;
  const int n = t.qubits();
  std::ostringstream out;
  out << "# truth table: " << gate.name << ", " << n << " qubits\n";
  out << "# columns: input output (leading '-' marks a sign flip)\n";
  for (std::size_t x = 0; x < t.size(); ++x) {
    out << bits(n, x) << ' ' << (t.sign(x) < 0 ? '-' : ' ') << bits(n, t(x)) << '\n';
  }
  return out.str();
}

}  // namespace spinlab
