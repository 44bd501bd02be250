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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "spinlab/compiler.hpp"
#include "spinlab/experiment.hpp"
#include "spinlab/refocusing.hpp"
#include "spinlab/simulator.hpp"

using namespace spinlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const std::filesystem::path kData = SPINLAB_DATA_DIR;

int rounded(Complex v) {
  if (std::abs(v.imag()) > 1e-9) return 99;
  const double r = std::round(v.real());
  return std::abs(v.real() - r) <= 1e-9 ? static_cast<int>(r) : 99;
}

bool is_sigma1(const DensityMatrix& rho) {
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      if (rounded(rho(r, c)) != (std::popcount(r ^ c) == 1 ? 1 : 0)) return false;
    }
  }
  return true;
}

// +1 on single-quantum pairs, -1 where either state is 000 or 111.
bool is_sigma2(const DensityMatrix& rho) {
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      int want = 0;
      if (std::popcount(r ^ c) == 1) want = (r == 0 || c == 0 || r == 7 || c == 7) ? -1 : 1;
      if (rounded(rho(r, c)) != want) return false;
    }
  }
  return true;
}

PulseProgram hard_quarter(SpinAxis axis) {
  PulseProgram p;
  p.events.push_back(Pulse{SpinSelection::every(), 90.0, axis});
  return p;
}

SpinSystem random_system(std::mt19937& rng) {
  std::uniform_real_distribution<double> offset(-400.0, 400.0);
  std::uniform_real_distribution<double> coupling(-20.0, 20.0);
  SpinSystem s(3);
  for (int i = 1; i <= 3; ++i) s.set_offset(i, offset(rng));
  for (auto pr : PairSet::all(3).pairs()) s.set_coupling(pr.first, pr.second, coupling(rng));
  return s;
}

SpinSelection random_selection(std::mt19937& rng) {
  if (rng() % 5 == 0) return SpinSelection::every();
  return SpinSelection::of(SpinSet::from_mask(1 + rng() % 7));
}

Outcome projector_outcome(const PulseProgram& p, const SpinSystem& sys, const GateSpec& g, SimMode mode) {
  const auto u = program_unitary(p, sys, mode);
  const auto c = check_projectors(u.unitary, *g.truth, 1e-10);
  Outcome o;
  o.pass = c.passed && !u.fell_back;
  o.detail = "max deviation " + num(c.max_deviation) + ", realized " +
             (c.realized ? describe_cycles(*c.realized) : std::string("no permutation")) + ", expected " +
             describe_cycles(*g.truth);
  return o;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto a = molecule_a();
  const auto u = program_unitary(compile_inversion_on_equality(a), a, SimMode::Full).unitary;
  const auto r = equal_up_to_global_phase(u, inversion_on_equality(3).matrix(), 1e-9);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {r.equal && r.deviation <= 1e-9 && secs < 1.0,
          "deviation " + num(r.deviation) + " after global phase, " + num(secs * 1e3) + " ms"};
}

Outcome criterion2() {
  const auto a = molecule_a();
  const auto thermal = thermal_state(a);
  const auto sigma1 = apply_program(thermal, hard_quarter(SpinAxis::Y), a, SimMode::Full).rho;
  const auto h = rotation_unitary(3, SpinSet{1, 2, 3}, std::numbers::pi / 2, SpinAxis::MinusY);
  const bool h_form = is_sigma1(h.adjoint() * thermal * h);
  auto p = hard_quarter(SpinAxis::Y);
  const auto gate = compile_inversion_on_equality(a);
  p.events.insert(p.events.end(), gate.events.begin(), gate.events.end());
  const auto sigma2 = apply_program(thermal, p, a, SimMode::Full).rho;
  bool spectra = true;
  for (int q = 1; q <= 3; ++q) {
    int negatives = 0;
    for (const auto& l : synthesize_spectrum(sigma2, a, q).lines) {
      if (l.amplitude.real() < -1e-9) {
        ++negatives;
        if (l.passive_label[6] != l.passive_label.back()) spectra = false;
      }
    }
    if (negatives != 2) spectra = false;
  }
  const bool ok = is_sigma1(sigma1) && h_form && is_sigma2(sigma2) && spectra;
  return {ok, std::string("coherence pattern ") + (is_sigma1(sigma1) && h_form ? "ok" : "wrong") +
                  ", after gate " + (is_sigma2(sigma2) ? "ok" : "wrong") + ", spectra " +
                  (spectra ? "two negative lines per qubit at passive 00/11" : "wrong")};
}

Outcome criterion3() {
  const auto b = molecule_b();
  auto o = projector_outcome(compile_parity(b), b, parity_gate(3, 3), SimMode::Ideal);
  const auto r = run_protocol(b, parse_gate_request("parity"), {});
  const bool swaps = r.realized && describe_cycles(*r.realized) == "010<->011 100<->101" && r.populations_consistent;
  o.pass = o.pass && swaps;
  o.detail += swaps ? ", population swaps 010<->011 100<->101" : ", population report mismatch";
  return o;
}

Outcome criterion4() {
  const auto c = molecule_c();
  auto o = projector_outcome(compile_fanout(c), c, fanout_gate(3, 1), SimMode::Ideal);
  const auto r = run_protocol(c, parse_gate_request("fanout"), {});
  const bool swaps = r.realized && describe_cycles(*r.realized) == "100<->111 101<->110" && r.populations_consistent;
  o.pass = o.pass && swaps;
  o.detail += swaps ? ", population swaps 100<->111 101<->110" : ", population exchanges differ";
  return o;
}

Outcome criterion5() {
  try {
    const auto c = fanout_from_parity(3);
    return {c.chosen.exact, "found " + c.chosen.describe() + " after " + std::to_string(c.tried.size()) + " candidates"};
  } catch (const ConstructionMismatchError& e) {
    return {false, std::string(e.what()) + "; closest " + e.closest().describe()};
  }
}

Outcome criterion6() {
  std::mt19937 rng(20260601);
  std::uniform_real_distribution<double> t(0.0, 0.05);
  double worst = 0.0;
  int programs = 0;
  bool ok = true;
  for (; programs < 200; ++programs) {
    const auto sys = random_system(rng);
    PulseProgram p;
    const int len = 1 + static_cast<int>(rng() % 24);
    for (int k = 0; k < len; ++k) {
      if (rng() % 2) p.events.push_back(make_delay(t(rng)));
      else p.events.push_back(Pulse{random_selection(rng), 180.0, rng() % 2 ? SpinAxis::X : SpinAxis::MinusX});
    }
    // Close with pi pulses so every spin sees an even number.
    const auto open = analyze(p, 3);
    std::uint32_t odd = 0;
    for (int i = 1; i <= 3; ++i) {
      if (open.inverted(i)) odd |= 1U << (i - 1);
    }
    if (odd) p.events.push_back(Pulse{SpinSelection::of(SpinSet::from_mask(odd)), 180.0, SpinAxis::X});
    const auto tr = analyze(p, 3);
    const auto literal = program_unitary(p, sys, SimMode::Full).unitary;
    const auto r = equal_up_to_global_phase(literal, effective_evolution(sys, tr, true, false), 1e-10);
    worst = std::max(worst, r.deviation);
    ok = ok && r.equal;
  }
  return {ok, std::to_string(programs) + " programs, worst deviation " + num(worst)};
}

Outcome criterion7() {
  std::mt19937 rng(20260602);
  static constexpr double kAngles[] = {90.0, 180.0, -90.0, 45.0, 270.0};
  std::uniform_real_distribution<double> t(0.0, 0.05);
  double worst = 0.0;
  bool idempotent = true;
  int programs = 0;
  for (; programs < 200; ++programs) {
    const auto sys = random_system(rng);
    PulseProgram p;
    const int len = static_cast<int>(rng() % 31);
    for (int k = 0; k < len; ++k) {
      const int c = static_cast<int>(rng() % 10);
      if (c < 6) {
        const auto sel = c < 3 ? SpinSelection::of(SpinSet{1 + static_cast<int>(rng() % 2)}) : random_selection(rng);
        p.events.push_back(Pulse{sel, kAngles[rng() % 5], static_cast<SpinAxis>(rng() % 6)});
      } else {
        p.events.push_back(make_delay(c == 9 ? 0.0 : t(rng)));
      }
    }
    const auto s = simplify(p);
    worst = std::max(worst, max_abs_diff(program_unitary(p, sys, SimMode::Full).unitary,
                                         program_unitary(s, sys, SimMode::Full).unitary));
    idempotent = idempotent && simplify(s) == s;
  }
  const auto b = molecule_b();
  const int naive = pulse_count(simplify(naive_parity_concatenation(b)));
  const int compiled = pulse_count(compile_parity(b));
  return {worst <= 1e-12 && idempotent && naive == compiled,
          std::to_string(programs) + " programs, worst deviation " + num(worst) +
              (idempotent ? ", idempotent" : ", NOT idempotent") + ", naive concatenation simplifies to " +
              std::to_string(naive) + " pulses vs " + std::to_string(compiled) + " compiled"};
}

Outcome criterion8() {
  bool ok = true;
  int checked = 0;
  for (const char* f : {"iequality_molA.pp", "parity_molB.pp", "fanout_molC.pp"}) {
    const auto p = load_program(kData / "programs" / f);
    ok = ok && parse_program(format_program(p), std::nullopt, kData / "programs") == p;
    ++checked;
  }
  std::mt19937 rng(20260603);
  std::uniform_real_distribution<double> t(0.0, 0.05);
  const auto b = molecule_b();
  for (int trial = 0; trial < 200; ++trial) {
    PulseProgram p;
    const int len = static_cast<int>(rng() % 25);
    for (int k = 0; k < len; ++k) {
      switch (rng() % 5) {
        case 0:
          p.events.push_back(make_delay(t(rng)));
          break;
        case 1:
          p.events.push_back(make_delay(DelayExpr::coupling_fraction(1 + rng() % 3, 1 + rng() % 8, SpinPair(2, 3)), b,
                                        PairSet{SpinPair(2, 3)}));
          break;
        case 2:
          p.events.push_back(Gradient{});
          break;
        default:
          p.events.push_back(Pulse{random_selection(rng), 90.0 * static_cast<double>(1 + rng() % 3),
                                   static_cast<SpinAxis>(rng() % 6)});
      }
    }
    if (rng() % 3 == 0) p.events.push_back(Readout{1 + static_cast<int>(rng() % 3)});
    ok = ok && parse_program(format_program(p), b) == p;
    ++checked;
  }
  const auto parity = load_program(kData / "programs" / "parity_molB.pp");
  const double tau1_ms = 2.0 * std::get<Delay>(parity.events[1]).seconds * 1e3;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", tau1_ms);
  const bool tau_ok = std::string(buf) == "9.25925926";
  return {ok && tau_ok, std::to_string(checked) + " programs round-trip" + (ok ? "" : " (MISMATCH)") +
                            ", tau1 molB = " + buf + " ms"};
}

Outcome criterion9() {
  const auto my = rotation_unitary(1, SpinSet{1}, std::numbers::pi / 2, SpinAxis::MinusY);
  const auto mx = rotation_unitary(1, SpinSet{1}, std::numbers::pi / 2, SpinAxis::MinusX);
  const auto y = rotation_unitary(1, SpinSet{1}, std::numbers::pi / 2, SpinAxis::Y);
  const bool z_ok = equal_up_to_global_phase(y * mx * my, phase_gate().matrix(), 1e-12).equal;
  SpinSystem one(2);
  one.set_coupling(1, 2, 1.0);
  const auto composite = program_unitary(compile_phase_gate(1), one, SimMode::Full).unitary;
  const bool z_prog = equal_up_to_global_phase(
                          composite, kron(phase_gate().matrix(), ComplexMatrix::identity(2)), 1e-12)
                          .equal;
  const double h_dev = max_abs_diff(my, pseudo_hadamard().matrix());
  const auto b = molecule_b();
  const auto cnot = projector_outcome(compile_cnot(b, 2, 3), b, cnot_gate(3, 2, 3), SimMode::Ideal);
  return {z_ok && z_prog && h_dev <= 1e-15 && cnot.pass,
          std::string("composite z (time order -y,-x,y) ") + (z_ok && z_prog ? "= s" : "!= s") +
              ", |(pi/2)_-y - h| = " + num(h_dev) + ", cnot cascade " + cnot.detail};
}

Outcome criterion10() {
  std::string detail;
  bool ok = true;
  auto report = [&](const char* name, const PulseProgram& p, const SpinSystem& sys, const GateSpec& g) {
    const auto ideal = check_projectors(program_unitary(p, sys, SimMode::Ideal).unitary, *g.truth, 1e-10);
    const auto full = check_projectors(program_unitary(p, sys, SimMode::Full).unitary, *g.truth, 1e-10);
    const auto full_u = program_unitary(p, sys, SimMode::Full).unitary;
    const auto dom = dominant_permutation(full_u);
    double self = 0.0;
    if (dom) self = check_projectors(full_u, *dom, 1e-10).fidelity;
    ok = ok && std::isfinite(ideal.fidelity) && std::isfinite(full.fidelity);
    if (!detail.empty()) detail += "; ";
    detail += std::string(name) + " fidelity ideal " + num(ideal.fidelity) + " full " + num(full.fidelity) +
              " (full-physics map " + (dom ? describe_cycles(*dom) : std::string("?")) + ", fidelity to it " +
              num(self) + ")";
  };
  report("parity", compile_parity(molecule_b()), molecule_b(), parity_gate(3, 3));
  report("fanout", compile_fanout(molecule_c()), molecule_c(), fanout_gate(3, 1));
  return {ok, detail};
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9, criterion10};
  const char* names[] = {
      "inversion-on-equality, full physics, up to global phase",
      "coherence patterns and spectral signs",
      "parity, ideal mode, projectors and population swaps",
      "fanout, ideal mode, projectors and population swaps",
      "fanout from Hadamard-conjugated parity",
      "refocusing analyzer vs simulation",
      "simplifier safety and naive parity concatenation",
      "parser round trip and symbolic delays",
      "sub-gate identities",
      "full-physics diagnostic report",
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (int k = 0; k < 10; ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, names[k], o.detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria passed in %.2f s\n", 10 - failures, secs);
  return failures == 0 ? 0 : 1;
}
