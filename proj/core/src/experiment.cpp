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

#include "spinlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "spinlab/errors.hpp"
#include "text_util.hpp"

namespace spinlab {

DensityMatrix thermal_state(const SpinSystem& sys) {
  const int n = sys.size();
  std::vector<Complex> d(sys.dim());
  for (std::size_t x = 0; x < sys.dim(); ++x) {
    double v = 0.0;
    for (int i = 1; i <= n; ++i) v += 2.0 * sys.weight(i) * magnetic_number(n, i, x);
    d[x] = v;
  }
  return ComplexMatrix::diagonal(d);
}

DensityMatrix dephase(const DensityMatrix& rho) {
  DensityMatrix out(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) out(i, i) = rho(i, i);
  return out;
}

ApplyResult apply_program(const DensityMatrix& rho, const PulseProgram& p, const SpinSystem& sys, SimMode mode) {
  if (rho.dim() != sys.dim()) throw ArgumentError("density matrix and spin system dimensions differ");
  const auto lowered = lower(p, sys, mode);
  ApplyResult r{rho, lowered.fell_back, lowered.warning};
  for (const auto& s : lowered.steps) {
    r.rho = s.kind == SimStep::Kind::Dephase ? dephase(r.rho) : conjugate(s.unitary, r.rho);
  }
  return r;
}

std::vector<double> populations(const DensityMatrix& rho) {
  std::vector<double> out(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) out[i] = rho(i, i).real();
  return out;
}

Spectrum synthesize_spectrum(const DensityMatrix& rho, const SpinSystem& sys, int qubit) {
  const int n = sys.size();
  if (qubit < 1 || qubit > n) throw ArgumentError("observed qubit out of range");
  if (rho.dim() != sys.dim()) throw ArgumentError("density matrix and spin system dimensions differ");
  const std::size_t qbit = std::size_t{1} << (n - qubit);
  Spectrum s;
  for (std::size_t a = 0; a < sys.dim(); ++a) {
    if (a & qbit) continue;
    const std::size_t b = a | qbit;
    SpectrumLine line;
    line.qubit = qubit;
    line.frequency_hz = sys.offset(qubit);
    for (int j = 1; j <= n; ++j) {
      if (j == qubit) continue;
      line.frequency_hz += sys.coupling(qubit, j) * magnetic_number(n, j, a);
      if (!line.passive_label.empty()) line.passive_label += ',';
      line.passive_label += "spin" + std::to_string(j) + "=" + std::to_string(spin_bit(n, j, a));
    }
    line.amplitude = rho(a, b);
    s.lines.push_back(std::move(line));
  }
  return s;
}

Spectrum merge_degenerate(const Spectrum& s, double window_hz) {
  if (!(window_hz >= 0.0)) throw ArgumentError("merge window must be non-negative");
  std::vector<SpectrumLine> sorted = s.lines;
  std::stable_sort(sorted.begin(), sorted.end(), [](const SpectrumLine& a, const SpectrumLine& b) {
    return a.qubit != b.qubit ? a.qubit < b.qubit : a.frequency_hz < b.frequency_hz;
  });
  Spectrum out;
  std::size_t k = 0;
  while (k < sorted.size()) {
    SpectrumLine merged = sorted[k];
    double freq_sum = sorted[k].frequency_hz;
    std::size_t count = 1;
    std::size_t j = k + 1;
    while (j < sorted.size() && sorted[j].qubit == sorted[k].qubit &&
           sorted[j].frequency_hz - sorted[k].frequency_hz <= window_hz) {
      merged.amplitude += sorted[j].amplitude;
      merged.passive_label += "|" + sorted[j].passive_label;
      freq_sum += sorted[j].frequency_hz;
      ++count;
      ++j;
    }
    merged.frequency_hz = freq_sum / static_cast<double>(count);
    out.lines.push_back(std::move(merged));
    k = j;
  }
  return out;
}

std::string format_spectrum_csv(const Spectrum& s) {
  std::ostringstream out;
  out << "qubit,freq_hz,amp_re,amp_im,passive_label\n";
  for (const auto& l : s.lines) {
    out << l.qubit << ',' << detail::format_sig(l.frequency_hz) << ',' << detail::format_sig(l.amplitude.real())
        << ',' << detail::format_sig(l.amplitude.imag()) << ",\"" << l.passive_label << "\"\n";
  }
  return out.str();
}

std::string format_spectrum_svg(const Spectrum& s) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 300.0;
  constexpr double kMargin = 40.0;
  double fmin = 0.0;
  double fmax = 1.0;
  double amax = 0.0;
  if (!s.lines.empty()) {
    fmin = fmax = s.lines.front().frequency_hz;
    for (const auto& l : s.lines) {
      fmin = std::min(fmin, l.frequency_hz);
      fmax = std::max(fmax, l.frequency_hz);
      amax = std::max(amax, std::abs(l.amplitude.real()));
    }
  }
  if (fmax - fmin < 1e-9) {
    fmin -= 1.0;
    fmax += 1.0;
  }
  const double pad = 0.05 * (fmax - fmin);
  fmin -= pad;
  fmax += pad;
  if (amax == 0.0) amax = 1.0;
  const double baseline = kHeight / 2.0;
  const double scale = (kHeight / 2.0 - kMargin) / amax;
  // Spectra are drawn with frequency increasing to the left.
  auto xpos = [&](double f) { return kMargin + (fmax - f) / (fmax - fmin) * (kWidth - 2 * kMargin); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "  <line x1=\"" << kMargin << "\" y1=\"" << baseline << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << baseline << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  for (const auto& l : s.lines) {
    const double x = xpos(l.frequency_hz);
    const double y = baseline - l.amplitude.real() * scale;
    out << "  <line x1=\"" << detail::format_fixed(x, 3) << "\" y1=\"" << baseline << "\" x2=\""
        << detail::format_fixed(x, 3) << "\" y2=\"" << detail::format_fixed(y, 3)
        << "\" stroke=\"#000\" stroke-width=\"2\"><title>qubit " << l.qubit << ' '
        << detail::format_sig(l.frequency_hz) << " Hz " << l.passive_label << "</title></line>\n";
  }
  out << "  <text x=\"" << kMargin << "\" y=\"" << kHeight - 10 << "\" font-size=\"12\">"
      << detail::format_sig(fmax) << " Hz</text>\n";
  out << "  <text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - 10
      << "\" font-size=\"12\" text-anchor=\"end\">" << detail::format_sig(fmin) << " Hz</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string format_density_matrix(const DensityMatrix& rho) {
  std::ostringstream out;
  out << "# spinlab density matrix\n";
  out << "dim " << rho.dim() << '\n';
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (j) out << ' ';
      out << '(' << detail::format_fixed(rho(i, j).real(), 6) << ',' << detail::format_fixed(rho(i, j).imag(), 6)
          << ')';
    }
    out << '\n';
  }
  return out.str();
}

DensityMatrix parse_density_matrix(std::string_view text) {
  std::optional<DensityMatrix> rho;
  std::size_t row = 0;
  int line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto tok = detail::split_ws(line);
    if (!rho) {
      if (tok.size() != 2 || detail::lower(tok[0]) != "dim") throw ParseError(line_no, "expected: dim <size>");
      const auto d = detail::parse_int(tok[1]);
      if (!d || *d < 2 || *d > static_cast<long long>(kMaxDim) || (*d & (*d - 1)) != 0) {
        throw ParseError(line_no, "dimension must be a power of two between 2 and 32");
      }
      rho.emplace(static_cast<std::size_t>(*d));
      continue;
    }
    if (row >= rho->dim()) throw ParseError(line_no, "too many rows");
    if (tok.size() != rho->dim()) throw ParseError(line_no, "expected " + std::to_string(rho->dim()) + " entries");
    for (std::size_t j = 0; j < tok.size(); ++j) {
      auto t = tok[j];
      if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw ParseError(line_no, "entries look like (re,im)");
      t = t.substr(1, t.size() - 2);
      const auto comma = t.find(',');
      if (comma == std::string_view::npos) throw ParseError(line_no, "entries look like (re,im)");
      const auto re = detail::parse_double(t.substr(0, comma));
      const auto im = detail::parse_double(t.substr(comma + 1));
      if (!re || !im) throw ParseError(line_no, "malformed number in '" + std::string(tok[j]) + "'");
      (*rho)(row, j) = Complex(*re, *im);
    }
    ++row;
  }
  if (!rho) throw ParseError(0, "empty density matrix file");
  if (row != rho->dim()) throw ParseError(line_no, "expected " + std::to_string(rho->dim()) + " rows");
  return *rho;
}

DensityMatrix load_density_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open density matrix file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_density_matrix(ss.str());
}

std::string basis_label(int n, std::size_t x) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += static_cast<char>('0' + spin_bit(n, i, x));
  return s;
}

std::vector<std::vector<std::size_t>> permutation_cycles(const TruthTable& t) {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(t.size(), false);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> c;
    for (std::size_t y = x; !seen[y]; y = t(y)) {
      seen[y] = true;
      c.push_back(y);
    }
    if (c.size() > 1) cycles.push_back(std::move(c));
  }
  return cycles;
}

std::string describe_cycles(const TruthTable& t) {
  const auto cycles = permutation_cycles(t);
  if (cycles.empty()) return "none";
  std::string out;
  for (const auto& c : cycles) {
    if (!out.empty()) out += ' ';
    if (c.size() == 2) {
      out += basis_label(t.qubits(), c[0]) + "<->" + basis_label(t.qubits(), c[1]);
      continue;
    }
    for (std::size_t y : c) out += basis_label(t.qubits(), y) + "->";
    out += basis_label(t.qubits(), c[0]);
  }
  return out;
}

ProtocolReport run_protocol(const SpinSystem& sys, const GateRequest& gate, const std::vector<int>& readouts,
                            SimMode mode) {
  for (int q : readouts) {
    if (q < 1 || q > sys.size()) throw ArgumentError("readout qubit out of range");
  }
  ProtocolReport r;
  r.gate = gate.to_string();
  r.mode = mode;
  r.program = compile_gate(sys, gate);
  r.expected = *target_gate(gate, sys.size()).truth;

  const DensityMatrix rho0 = thermal_state(sys);
  const auto applied = apply_program(rho0, r.program, sys, mode);
  r.fell_back = applied.fell_back;
  r.thermal_populations = populations(rho0);
  r.final_populations = populations(applied.rho);

  const auto u = program_unitary(r.program, sys, mode);
  r.realized = dominant_permutation(u.unitary);
  r.permutation_matches = r.realized && r.realized->mapping() == r.expected.mapping() &&
                          check_projectors(u.unitary, r.expected, 1e-9).passed;
  r.populations_consistent = true;
  for (std::size_t x = 0; x < sys.dim(); ++x) {
    if (std::abs(r.final_populations[r.expected(x)] - r.thermal_populations[x]) > 1e-9) {
      r.populations_consistent = false;
    }
  }

  const DensityMatrix crushed = dephase(applied.rho);
  std::vector<std::future<ReadoutResult>> jobs;
  for (int q : readouts) {
    jobs.push_back(std::async(std::launch::async, [&sys, &crushed, q] {
      PulseProgram readout;
      readout.events.push_back(Readout{q});
      const auto after = apply_program(crushed, readout, sys, SimMode::Full);
      return ReadoutResult{q, synthesize_spectrum(after.rho, sys, q)};
    }));
  }
  for (auto& j : jobs) r.readouts.push_back(j.get());
  return r;
}

std::string format_population_report(const ProtocolReport& r) {
  std::ostringstream out;
  const int n = r.expected.qubits();
  out << "# spinlab population report\n";
  out << "gate " << r.gate << '\n';
  out << "mode " << to_string(r.mode) << (r.fell_back ? " (fell back to full: no coupling intent)" : "") << '\n';
  out << "state thermal after_gate\n";
  for (std::size_t x = 0; x < r.thermal_populations.size(); ++x) {
    out << basis_label(n, x) << ' ' << detail::format_sig(r.thermal_populations[x]) << ' '
        << detail::format_sig(r.final_populations[x]) << '\n';
  }
  out << "expected exchanges: " << describe_cycles(r.expected) << '\n';
  out << "realized exchanges: " << (r.realized ? describe_cycles(*r.realized) : std::string("not a permutation"))
      << '\n';
  out << "permutation match: " << (r.permutation_matches ? "yes" : "no") << '\n';
  out << "populations consistent: " << (r.populations_consistent ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace spinlab
