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

#include "spinlab/simulator.hpp"

#include <cmath>
#include <numbers>

#include "spinlab/errors.hpp"
#include "text_util.hpp"

namespace spinlab {

std::string_view to_string(SimMode mode) noexcept { return mode == SimMode::Ideal ? "ideal" : "full"; }

std::optional<SimMode> parse_sim_mode(std::string_view text) {
  const auto t = detail::lower(text);
  if (t == "ideal" || t == "idealized") return SimMode::Ideal;
  if (t == "full") return SimMode::Full;
  return std::nullopt;
}

ComplexMatrix pulse_unitary(const Pulse& pulse, int n) {
  const SpinSet spins = pulse.target.resolve(n);
  if (spins.max_index() > n) throw ArgumentError("pulse addresses a spin beyond the system size");
  return rotation_unitary(n, spins, pulse.angle_deg * std::numbers::pi / 180.0, pulse.axis);
}

ComplexMatrix effective_evolution(const SpinSystem& sys, const TogglingTrace& trace, bool include_shifts,
                                  bool intended_only) {
  const int n = sys.size();
  if (trace.spins != n) throw ArgumentError("trace and spin system sizes differ");
  std::vector<double> phase(sys.dim(), 0.0);  // accumulated H*t, Hz*s
  for (std::size_t x = 0; x < sys.dim(); ++x) {
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double mi = magnetic_number(n, i, x);
      if (include_shifts) acc += sys.offset(i) * trace.shift_time(i) * mi;
      for (int j = i + 1; j <= n; ++j) {
        const double t = intended_only ? trace.intended_coupling_time(i, j) : trace.coupling_time(i, j);
        acc += sys.coupling(i, j) * t * mi * magnetic_number(n, j, x);
      }
    }
    phase[x] = acc;
  }
  return diagonal_evolution(phase, 1.0);
}

namespace {

bool all_delays_have_intent(const PulseProgram& p) {
  for (const auto& e : p.events) {
    if (const auto* d = std::get_if<Delay>(&e); d && !d->intent) return false;
  }
  return true;
}

SimStep unitary_step(ComplexMatrix u) { return SimStep{SimStep::Kind::Unitary, std::move(u)}; }

SimStep literal_step(const PulseEvent& e, const SpinSystem& sys) {
  const int n = sys.size();
  if (const auto* p = std::get_if<Pulse>(&e)) return unitary_step(pulse_unitary(*p, n));
  if (const auto* d = std::get_if<Delay>(&e)) return unitary_step(free_evolution(sys, d->seconds));
  if (std::holds_alternative<Gradient>(e)) return SimStep{SimStep::Kind::Dephase, ComplexMatrix(sys.dim())};
  const auto& r = std::get<Readout>(e);
  if (r.spin > n) throw ArgumentError("readout spin beyond the system size");
  return unitary_step(rotation_unitary(n, SpinSet{r.spin}, std::numbers::pi / 2, SpinAxis::Y));
}

}  // namespace

LoweredProgram lower(const PulseProgram& p, const SpinSystem& sys, SimMode mode) {
  validate(p, sys.size());
  LoweredProgram out;
  out.mode = mode;
  if (mode == SimMode::Ideal && !all_delays_have_intent(p)) {
    out.mode = SimMode::Full;
    out.fell_back = true;
    out.warning = "ideal mode needs coupling intent on every delay; simulated in full mode";
  }
  const auto& ev = p.events;
  if (out.mode == SimMode::Full) {
    for (const auto& e : ev) out.steps.push_back(literal_step(e, sys));
    return out;
  }

  std::size_t k = 0;
  while (k < ev.size()) {
    const bool in_run = std::holds_alternative<Delay>(ev[k]) || is_refocusing_pulse(ev[k]);
    if (!in_run) {
      out.steps.push_back(literal_step(ev[k], sys));
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < ev.size() && (std::holds_alternative<Delay>(ev[end]) || is_refocusing_pulse(ev[end]))) ++end;
    std::size_t first = end;
    std::size_t last = end;
    for (std::size_t j = k; j < end; ++j) {
      if (std::holds_alternative<Delay>(ev[j])) {
        if (first == end) first = j;
        last = j;
      }
    }
    if (first == end) {
      for (std::size_t j = k; j < end; ++j) out.steps.push_back(literal_step(ev[j], sys));
    } else {
      for (std::size_t j = k; j < first; ++j) out.steps.push_back(literal_step(ev[j], sys));
      const auto trace = analyze(std::span<const PulseEvent>(ev.data() + first, last - first + 1), sys.size());
      out.steps.push_back(unitary_step(effective_evolution(sys, trace, false, true)));
      for (std::size_t j = last + 1; j < end; ++j) out.steps.push_back(literal_step(ev[j], sys));
    }
    k = end;
  }
  return out;
}

UnitaryResult program_unitary(const PulseProgram& p, const SpinSystem& sys, SimMode mode) {
  const auto lowered = lower(p, sys, mode);
  UnitaryResult r{ComplexMatrix::identity(sys.dim()), lowered.fell_back, lowered.warning};
  for (const auto& s : lowered.steps) {
    if (s.kind == SimStep::Kind::Unitary) r.unitary = s.unitary * r.unitary;
  }
  return r;
}

std::optional<TruthTable> dominant_permutation(const ComplexMatrix& u) {
  const std::size_t dim = u.dim();
  std::vector<std::size_t> mapping(dim);
  std::vector<bool> used(dim, false);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t best = 0;
    for (std::size_t y = 1; y < dim; ++y) {
      if (std::abs(u(y, x)) > std::abs(u(best, x))) best = y;
    }
    if (used[best]) return std::nullopt;
    used[best] = true;
    mapping[x] = best;
  }
  return TruthTable(u.spin_count(), std::move(mapping));
}

ProjectorCheck check_projectors(const ComplexMatrix& u, const TruthTable& expected, double tol) {
  const std::size_t dim = u.dim();
  if (expected.size() != dim) throw ArgumentError("truth table and unitary dimensions differ");
  ProjectorCheck c;
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t tx = expected(x);
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        Complex v = u(a, x) * std::conj(u(b, x));
        if (a == tx && b == tx) v -= 1.0;
        c.max_deviation = std::max(c.max_deviation, std::abs(v));
      }
    }
    c.fidelity += std::norm(u(tx, x));
  }
  c.fidelity /= static_cast<double>(dim);
  c.passed = c.max_deviation <= tol;
  c.realized = dominant_permutation(u);
  return c;
}

}  // namespace spinlab
