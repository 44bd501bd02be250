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

#include "spinlab/spin_system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spinlab/errors.hpp"
#include "text_util.hpp"

namespace spinlab {

SpinPair::SpinPair(int i, int j) : first(std::min(i, j)), second(std::max(i, j)) {
  if (i == j || first < 1 || second > kMaxSpins) {
    throw ArgumentError("invalid spin pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

PairSet::PairSet(std::initializer_list<SpinPair> pairs) {
  for (const auto& p : pairs) insert(p);
}

PairSet PairSet::all(int n) {
  PairSet s;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s.insert(SpinPair(i, j));
  return s;
}

std::vector<SpinPair> PairSet::pairs() const {
  std::vector<SpinPair> out;
  for (int i = 1; i <= kMaxSpins; ++i)
    for (int j = i + 1; j <= kMaxSpins; ++j)
      if (contains(SpinPair(i, j))) out.emplace_back(i, j);
  return out;
}

SpinSystem::SpinSystem(int n) : n_(n) {
  if (n < 2 || n > kMaxSpins) throw ArgumentError("spin system needs 2..5 spins, got " + std::to_string(n));
  const auto un = static_cast<std::size_t>(n);
  labels_.resize(un);
  for (int i = 0; i < n; ++i) labels_[static_cast<std::size_t>(i)] = std::to_string(i + 1);
  offsets_.assign(un, 0.0);
  couplings_.assign(un * un, 0.0);
  weights_.assign(un, 1.0);
}

void SpinSystem::check_index(int i) const {
  if (i < 1 || i > n_) throw ArgumentError("spin index " + std::to_string(i) + " out of range 1.." + std::to_string(n_));
}

const std::string& SpinSystem::label(int i) const {
  check_index(i);
  return labels_[static_cast<std::size_t>(i - 1)];
}

double SpinSystem::offset(int i) const {
  check_index(i);
  return offsets_[static_cast<std::size_t>(i - 1)];
}

double SpinSystem::coupling(int i, int j) const {
  check_index(i);
  check_index(j);
  return couplings_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))];
}

double SpinSystem::weight(int i) const {
  check_index(i);
  return weights_[static_cast<std::size_t>(i - 1)];
}

void SpinSystem::set_label(int i, std::string label) {
  check_index(i);
  labels_[static_cast<std::size_t>(i - 1)] = std::move(label);
}

void SpinSystem::set_offset(int i, double hz) {
  check_index(i);
  if (!std::isfinite(hz)) throw ArgumentError("offset must be finite");
  offsets_[static_cast<std::size_t>(i - 1)] = hz;
}

void SpinSystem::set_coupling(int i, int j, double hz) {
  check_index(i);
  check_index(j);
  if (i == j) throw ArgumentError("a spin cannot couple to itself");
  if (!std::isfinite(hz)) throw ArgumentError("coupling must be finite");
  couplings_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))] = hz;
  couplings_[static_cast<std::size_t>((j - 1) * n_ + (i - 1))] = hz;
}

void SpinSystem::set_weight(int i, double factor) {
  check_index(i);
  if (!(factor > 0.0) || !std::isfinite(factor)) throw ArgumentError("weight must be positive");
  weights_[static_cast<std::size_t>(i - 1)] = factor;
}

std::vector<double> coupling_hamiltonian(const SpinSystem& sys, PairSet mask) {
  const int n = sys.size();
  std::vector<double> h(sys.dim(), 0.0);
  for (const auto& p : mask.pairs()) {
    if (p.second > n) continue;
    const double j = sys.coupling(p.first, p.second);
    for (std::size_t x = 0; x < h.size(); ++x) {
      h[x] += j * magnetic_number(n, p.first, x) * magnetic_number(n, p.second, x);
    }
  }
  return h;
}

std::vector<double> coupling_hamiltonian(const SpinSystem& sys) {
  return coupling_hamiltonian(sys, PairSet::all(sys.size()));
}

std::vector<double> zeeman_hamiltonian(const SpinSystem& sys) {
  const int n = sys.size();
  std::vector<double> h(sys.dim(), 0.0);
  for (int i = 1; i <= n; ++i) {
    const double nu = sys.offset(i);
    for (std::size_t x = 0; x < h.size(); ++x) h[x] += nu * magnetic_number(n, i, x);
  }
  return h;
}

ComplexMatrix free_evolution(const SpinSystem& sys, double t_seconds, bool include_shifts, PairSet coupling_mask) {
  auto h = coupling_hamiltonian(sys, coupling_mask);
  if (include_shifts) {
    const auto z = zeeman_hamiltonian(sys);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] += z[k];
  }
  return diagonal_evolution(h, t_seconds);
}

ComplexMatrix free_evolution(const SpinSystem& sys, double t_seconds) {
  return free_evolution(sys, t_seconds, true, PairSet::all(sys.size()));
}

namespace {

int parse_index(std::string_view tok, int line, int n) {
  const auto v = detail::parse_int(tok);
  if (!v || *v < 1 || *v > n) throw ParseError(line, "bad spin index '" + std::string(tok) + "'");
  return static_cast<int>(*v);
}

double parse_value(std::string_view tok, int line) {
  const auto v = detail::parse_double(tok);
  if (!v) throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  return *v;
}

}  // namespace

SpinSystem parse_molecule(std::string_view text) {
  std::optional<SpinSystem> sys;
  int line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto tok = detail::split_ws(line);
    const auto key = detail::lower(tok[0]);
    if (key == "spins") {
      if (sys) throw ParseError(line_no, "duplicate 'spins' directive");
      if (tok.size() != 2) throw ParseError(line_no, "expected: spins <n>");
      const auto n = detail::parse_int(tok[1]);
      if (!n || *n < 2 || *n > kMaxSpins) throw ParseError(line_no, "spin count must be 2..5");
      sys.emplace(static_cast<int>(*n));
      continue;
    }
    if (!sys) throw ParseError(line_no, "'spins <n>' must precede '" + std::string(tok[0]) + "'");
    const int n = sys->size();
    try {
      if (key == "label") {
        if (tok.size() < 3) throw ParseError(line_no, "expected: label <i> <text>");
        const int i = parse_index(tok[1], line_no, n);
        // Label is the rest of the line after the index.
        const auto rest = detail::trim(line.substr(static_cast<std::size_t>(tok[2].data() - line.data())));
        sys->set_label(i, std::string(rest));
      } else if (key == "offset") {
        if (tok.size() != 3) throw ParseError(line_no, "expected: offset <i> <hz>");
        sys->set_offset(parse_index(tok[1], line_no, n), parse_value(tok[2], line_no));
      } else if (key == "j") {
        if (tok.size() != 4) throw ParseError(line_no, "expected: j <i> <j> <hz>");
        const int i = parse_index(tok[1], line_no, n);
        const int j = parse_index(tok[2], line_no, n);
        if (i == j) throw ParseError(line_no, "coupling needs two distinct spins");
        sys->set_coupling(i, j, parse_value(tok[3], line_no));
      } else if (key == "weight") {
        if (tok.size() != 3) throw ParseError(line_no, "expected: weight <i> <factor>");
        const int i = parse_index(tok[1], line_no, n);
        const double w = parse_value(tok[2], line_no);
        if (!(w > 0.0)) throw ParseError(line_no, "weight must be positive");
        sys->set_weight(i, w);
      } else {
        throw ParseError(line_no, "unknown keyword '" + std::string(tok[0]) + "'");
      }
    } catch (const ArgumentError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!sys) throw ParseError(0, "molecule file has no 'spins' directive");
  return *sys;
}

SpinSystem load_molecule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open molecule file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_molecule(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

std::string format_molecule(const SpinSystem& sys) {
  std::ostringstream out;
  const int n = sys.size();
  out << "spins " << n << '\n';
  for (int i = 1; i <= n; ++i) out << "label " << i << ' ' << sys.label(i) << '\n';
  for (int i = 1; i <= n; ++i) out << "offset " << i << ' ' << detail::format_shortest(sys.offset(i)) << '\n';
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out << "j " << i << ' ' << j << ' ' << detail::format_shortest(sys.coupling(i, j)) << '\n';
  for (int i = 1; i <= n; ++i)
    if (sys.weight(i) != 1.0) out << "weight " << i << ' ' << detail::format_shortest(sys.weight(i)) << '\n';
  return out.str();
}

SpinSystem molecule_a() {
  SpinSystem s(3);
  s.set_label(1, "H1");
  s.set_label(2, "H2");
  s.set_label(3, "H3");
  s.set_offset(2, 176.0);
  s.set_offset(3, 237.0);
  s.set_coupling(1, 2, 8.1);
  s.set_coupling(2, 3, 1.47);
  s.set_coupling(1, 3, 8.1);
  return s;
}

SpinSystem molecule_b() {
  SpinSystem s(3);
  s.set_label(1, "C1");
  s.set_label(2, "C2");
  s.set_label(3, "C3");
  s.set_offset(2, 15755.0);
  s.set_offset(3, 20080.0);
  s.set_coupling(1, 2, 54.0);
  s.set_coupling(1, 3, 1.4);
  s.set_coupling(2, 3, 35.1);
  return s;
}

SpinSystem molecule_c() {
  SpinSystem s(3);
  s.set_label(1, "F");
  s.set_label(2, "H1");
  s.set_label(3, "H2");
  s.set_offset(3, 250.0);
  s.set_coupling(1, 2, 3.84);
  s.set_coupling(2, 3, 8.01);
  s.set_coupling(1, 3, -8.1);
  // 19F / 1H Larmor frequency ratio at 11.4 T: 470.59 / 500.13.
  s.set_weight(1, 0.940935357);
  return s;
}

}  // namespace spinlab
