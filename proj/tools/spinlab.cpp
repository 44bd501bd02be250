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

// spinlab: compile, simulate and verify NMR gate pulse programs.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse or argument error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spinlab/compiler.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"
#include "spinlab/refocusing.hpp"
#include "spinlab/simulator.hpp"

namespace fs = std::filesystem;
using namespace spinlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string sig(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  out << text;
}

SimMode mode_from(const std::string& text) {
  const auto m = parse_sim_mode(text);
  if (!m) throw ArgumentError("unknown mode '" + text + "' (expected ideal or full)");
  return *m;
}

struct Loaded {
  SpinSystem sys;
  PulseProgram program;
};

// The molecule comes from --molecule, or else from the program's `use` line.
Loaded load_inputs(const std::string& molecule_path, const std::string& program_path) {
  if (!molecule_path.empty()) {
    auto sys = load_molecule(molecule_path);
    auto p = load_program(program_path, sys);
    return {std::move(sys), std::move(p)};
  }
  auto p = load_program(program_path);
  if (!p.molecule) throw ArgumentError("no --molecule given and the program has no `use` line");
  return {load_molecule(fs::path(program_path).parent_path() / *p.molecule), std::move(p)};
}

void warn_fallback(bool fell_back, const std::string& warning) {
  if (fell_back) std::cerr << "warning: " << warning << '\n';
}

int run_compile(const std::string& molecule, const std::string& gate, const std::string& out) {
  const auto sys = load_molecule(molecule);
  auto p = compile_gate(sys, parse_gate_request(gate));
  const fs::path out_dir = out.empty() || out == "-" ? fs::current_path() : fs::absolute(out).parent_path();
  // Relative `use` paths keep fixture trees movable; unrelated trees get an absolute path.
  const auto mol = fs::weakly_canonical(fs::absolute(molecule));
  const auto base = fs::weakly_canonical(out_dir);
  const bool related = std::distance(base.begin(), base.end()) > 1 && *std::next(mol.begin()) == *std::next(base.begin());
  p.molecule = (related ? fs::relative(mol, base) : mol).generic_string();
  validate(p, sys.size());
  write_output(out, format_program(p));
  return kExitOk;
}

int run_simulate(const std::string& molecule, const std::string& program, const std::string& initial,
                 const std::string& mode, const std::string& out) {
  const auto in = load_inputs(molecule, program);
  const DensityMatrix rho0 = initial == "thermal" ? thermal_state(in.sys) : load_density_matrix(initial);
  const auto r = apply_program(rho0, in.program, in.sys, mode_from(mode));
  warn_fallback(r.fell_back, r.warning);
  write_output(out, format_density_matrix(r.rho));
  return kExitOk;
}

int run_analyze(const std::string& molecule, const std::string& program) {
  const auto in = load_inputs(molecule, program);
  const int n = in.sys.size();
  const auto tr = analyze(in.program, n);
  std::cout << "# toggling-frame analysis\n";
  std::cout << "total_delay_s " << sig(tr.total_duration) << '\n';
  std::cout << "spin shift_time_s pi_pulses\n";
  for (int i = 1; i <= n; ++i) std::cout << i << ' ' << sig(tr.shift_time(i)) << ' ' << tr.pi_counts[i - 1] << '\n';
  std::cout << "pair coupling_time_s intended_time_s\n";
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::cout << i << '-' << j << ' ' << sig(tr.coupling_time(i, j)) << ' ' << sig(tr.intended_coupling_time(i, j))
                << '\n';
    }
  }
  return kExitOk;
}

int run_spectrum(const std::string& molecule, const std::string& state, int readout, const std::string& out,
                 const std::string& svg, std::optional<double> merge) {
  const auto sys = load_molecule(molecule);
  PulseProgram p;
  p.events.push_back(Readout{readout});
  const auto r = apply_program(load_density_matrix(state), p, sys, SimMode::Full);
  auto s = synthesize_spectrum(r.rho, sys, readout);
  if (merge) s = merge_degenerate(s, *merge);
  write_output(out, format_spectrum_csv(s));
  if (!svg.empty()) write_output(svg, format_spectrum_svg(s));
  return kExitOk;
}

int run_verify(const std::string& molecule, const std::string& program, const std::string& gate,
               const std::string& mode) {
  const auto in = load_inputs(molecule, program);
  const auto target = target_gate(parse_gate_request(gate), in.sys.size());
  const auto u = program_unitary(in.program, in.sys, mode_from(mode));
  warn_fallback(u.fell_back, u.warning);
  const auto check = check_projectors(u.unitary, *target.truth, 1e-9);
  std::cout << "gate " << target.name << '\n';
  std::cout << "mode " << (u.fell_back ? "full (fallback)" : std::string(to_string(mode_from(mode)))) << '\n';
  std::cout << "projector mapping: " << (check.passed ? "PASS" : "FAIL") << '\n';
  std::cout << "max projector deviation: " << sig(check.max_deviation) << '\n';
  std::cout << "population fidelity: " << sig(check.fidelity) << '\n';
  std::cout << "realized exchanges: " << (check.realized ? describe_cycles(*check.realized) : "not a permutation")
            << '\n';
  std::cout << "expected exchanges: " << describe_cycles(*target.truth) << '\n';
  try {
    const auto phase = equal_up_to_global_phase(u.unitary, target.matrix(), 1e-9);
    std::cout << "equal up to global phase: " << (phase.equal ? "yes" : "no") << '\n';
    std::cout << "global phase deviation: " << sig(phase.deviation) << '\n';
  } catch (const DegenerateComparisonError& e) {
    std::cout << "equal up to global phase: undetermined (" << e.what() << ")\n";
  }
  return check.passed ? kExitOk : kExitVerifyFailed;
}

int run_protocol_cmd(const std::string& molecule, const std::string& gate, const std::string& mode,
                     const std::string& out_dir, const std::vector<int>& readouts) {
  const auto sys = load_molecule(molecule);
  std::vector<int> qubits = readouts;
  if (qubits.empty()) {
    for (int i = 1; i <= sys.size(); ++i) qubits.push_back(i);
  }
  const auto r = run_protocol(sys, parse_gate_request(gate), qubits, mode_from(mode));
  warn_fallback(r.fell_back, "ideal mode needs coupling intent on every delay; simulated in full mode");
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string report = format_population_report(r);
  write_output((dir / "populations.txt").string(), report);
  for (const auto& ro : r.readouts) {
    write_output((dir / ("spectrum_q" + std::to_string(ro.qubit) + ".csv")).string(),
                 format_spectrum_csv(ro.spectrum));
  }
  std::cout << report;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinlab: NMR gate compiler and density-matrix simulator"};
  app.require_subcommand(1);

  std::string molecule;
  std::string program;
  std::string gate;
  std::string out;
  std::string mode = "ideal";
  std::string initial = "thermal";
  std::string state;
  std::string svg;
  std::string out_dir = ".";
  int readout = 1;
  double merge_hz = 0.0;
  std::vector<int> readouts;

  auto* compile = app.add_subcommand("compile", "Compile a gate into a pulse program");
  compile->add_option("-m,--molecule", molecule, "Molecule file")->required();
  compile->add_option("-g,--gate", gate, "iequality | parity | fanout | cnot:<c>,<t> | u2:<i>,<j>[,inv]")->required();
  compile->add_option("-o,--out", out, "Output .pp file (stdout if omitted)");

  auto* simulate = app.add_subcommand("simulate", "Run a program on a density matrix");
  simulate->add_option("-m,--molecule", molecule, "Molecule file (default: the program's use line)");
  simulate->add_option("-p,--program", program, "Pulse program")->required();
  simulate->add_option("--initial", initial, "thermal or a density-matrix file");
  simulate->add_option("--mode", mode, "ideal or full")->capture_default_str();
  simulate->add_option("-o,--out", out, "Output density matrix (stdout if omitted)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Toggling-frame analysis of a delay/pi-pulse program");
  analyze_cmd->add_option("-m,--molecule", molecule, "Molecule file (default: the program's use line)");
  analyze_cmd->add_option("-p,--program", program, "Pulse program")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Stick spectrum after a readout pulse");
  spectrum->add_option("-m,--molecule", molecule, "Molecule file")->required();
  spectrum->add_option("--state", state, "Density-matrix file")->required();
  spectrum->add_option("--readout", readout, "Observed spin")->required();
  spectrum->add_option("-o,--out", out, "Output CSV (stdout if omitted)");
  spectrum->add_option("--svg", svg, "Optional SVG stick plot");
  auto* merge_opt = spectrum->add_option("--merge-degenerate", merge_hz, "Sum lines within this many Hz");

  auto* verify = app.add_subcommand("verify", "Check a program against a gate's truth table");
  verify->add_option("-m,--molecule", molecule, "Molecule file (default: the program's use line)");
  verify->add_option("-p,--program", program, "Pulse program")->required();
  verify->add_option("-g,--gate", gate, "Target gate")->required();
  verify->add_option("--mode", mode, "ideal or full")->capture_default_str();

  auto* truthtable = app.add_subcommand("truthtable", "Print a gate's truth table");
  int qubits = 3;
  truthtable->add_option("-g,--gate", gate, "Gate")->required();
  truthtable->add_option("-n,--qubits", qubits, "Qubit count")->capture_default_str();
  truthtable->add_option("-o,--out", out, "Output file (stdout if omitted)");

  auto* protocol = app.add_subcommand("protocol", "Thermal state, gate, gradient and readout spectra");
  protocol->add_option("-m,--molecule", molecule, "Molecule file")->required();
  protocol->add_option("-g,--gate", gate, "Gate")->required();
  protocol->add_option("--mode", mode, "ideal or full")->capture_default_str();
  protocol->add_option("--out-dir", out_dir, "Directory for spectra and the population report")->capture_default_str();
  protocol->add_option("--readouts", readouts, "Observed spins (default: all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compile) return run_compile(molecule, gate, out);
    if (*simulate) return run_simulate(molecule, program, initial, mode, out);
    if (*analyze_cmd) return run_analyze(molecule, program);
    if (*spectrum) {
      return run_spectrum(molecule, state, readout, out, svg,
                          merge_opt->count() ? std::optional<double>(merge_hz) : std::nullopt);
    }
    if (*verify) return run_verify(molecule, program, gate, mode);
    if (*truthtable) {
      write_output(out, format_truth_table(target_gate(parse_gate_request(gate), qubits)));
      return kExitOk;
    }
    if (*protocol) return run_protocol_cmd(molecule, gate, mode, out_dir, readouts);
  } catch (const spinlab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
