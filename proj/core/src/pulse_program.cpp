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

#include "spinlab/pulse_program.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spinlab/errors.hpp"
#include "text_util.hpp"

namespace spinlab {

bool operator==(const Delay& a, const Delay& b) {
  if (!(a.duration == b.duration) || a.intent != b.intent) return false;
  const double scale = std::max({std::abs(a.seconds), std::abs(b.seconds), 1e-300});
  return std::abs(a.seconds - b.seconds) <= 1e-14 * scale;
}

PulseEvent make_pulse(SpinSelection target, double angle_deg, SpinAxis axis) {
  if (!(angle_deg > -360.0 && angle_deg <= 360.0)) throw ArgumentError("pulse angle must lie in (-360, 360]");
  if (!target.all && target.spins.empty()) throw ArgumentError("pulse needs at least one spin");
  return Pulse{target, angle_deg, axis};
}

PulseEvent make_pulse(SpinSet spins, double angle_deg, SpinAxis axis) {
  return make_pulse(SpinSelection::of(spins), angle_deg, axis);
}

PulseEvent make_delay(double seconds) {
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) throw ArgumentError("delay must be a finite non-negative time");
  return Delay{DelayExpr::seconds(seconds), seconds, std::nullopt};
}

PulseEvent make_delay(const DelayExpr& expr, const SpinSystem& sys, std::optional<PairSet> intent) {
  const double s = expr.evaluate(sys);
  if (!(s >= 0.0)) throw ArgumentError("delay " + expr.to_string() + " evaluates to a negative time");
  return Delay{expr, s, intent};
}

double normalize_angle(double deg) {
  deg = std::fmod(deg, 720.0);
  if (deg <= -360.0) deg += 720.0;
  if (deg > 360.0) deg -= 720.0;
  return deg;
}

int pulse_count(const PulseProgram& p) {
  return static_cast<int>(std::count_if(p.events.begin(), p.events.end(),
                                        [](const PulseEvent& e) { return std::holds_alternative<Pulse>(e); }));
}

int delay_count(const PulseProgram& p) {
  return static_cast<int>(std::count_if(p.events.begin(), p.events.end(),
                                        [](const PulseEvent& e) { return std::holds_alternative<Delay>(e); }));
}

double total_delay(const PulseProgram& p) {
  double t = 0.0;
  for (const auto& e : p.events) {
    if (const auto* d = std::get_if<Delay>(&e)) t += d->seconds;
  }
  return t;
}

void validate(const PulseProgram& p, std::optional<int> n) {
  for (std::size_t k = 0; k < p.events.size(); ++k) {
    const auto& e = p.events[k];
    const std::string where = "event " + std::to_string(k + 1) + ": ";
    if (const auto* pulse = std::get_if<Pulse>(&e)) {
      if (!(pulse->angle_deg > -360.0 && pulse->angle_deg <= 360.0)) throw ArgumentError(where + "angle out of range");
      if (!pulse->target.all && pulse->target.spins.empty()) throw ArgumentError(where + "empty spin selection");
      if (n && !pulse->target.all && pulse->target.spins.max_index() > *n) {
        throw ArgumentError(where + "pulse addresses a spin beyond the system size");
      }
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      if (!(d->seconds >= 0.0) || !std::isfinite(d->seconds)) throw ArgumentError(where + "negative or invalid delay");
      if (n && d->intent && *d->intent != PairSet::all(kMaxSpins)) {
        for (const auto& pr : d->intent->pairs()) {
          if (pr.second > *n) throw ArgumentError(where + "coupling intent names a spin beyond the system size");
        }
      }
    } else if (const auto* r = std::get_if<Readout>(&e)) {
      if (k + 1 != p.events.size()) throw ArgumentError(where + "readout must be the final event");
      if (r->spin < 1 || (n && r->spin > *n) || r->spin > kMaxSpins) throw ArgumentError(where + "readout spin out of range");
    }
  }
}

namespace {

std::string format_intent(PairSet s) {
  if (s.empty()) return "none";
  std::string out;
  for (const auto& pr : s.pairs()) {
    if (!out.empty()) out += ',';
    out += std::to_string(pr.first) + "-" + std::to_string(pr.second);
  }
  return out;
}

std::optional<PairSet> parse_intent(std::string_view text, int line_no) {
  const auto key = detail::lower(text);
  if (key == "all") return std::nullopt;
  PairSet out;
  if (key == "none") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = detail::trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) throw ParseError(line_no, "coupling pair must look like i-j, got '" + std::string(item) + "'");
    const auto i = detail::parse_int(item.substr(0, dash));
    const auto j = detail::parse_int(item.substr(dash + 1));
    if (!i || !j || *i < 1 || *j < 1 || *i > kMaxSpins || *j > kMaxSpins || *i == *j) {
      throw ParseError(line_no, "invalid coupling pair '" + std::string(item) + "'");
    }
    out.insert(SpinPair(static_cast<int>(*i), static_cast<int>(*j)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SpinSelection parse_selection(std::string_view text, int line_no) {
  if (detail::lower(text) == "all") return SpinSelection::every();
  SpinSet s;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto v = detail::parse_int(item);
    if (!v || *v < 1 || *v > kMaxSpins) throw ParseError(line_no, "invalid spin index '" + std::string(item) + "'");
    s.insert(static_cast<int>(*v));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return SpinSelection::of(s);
}

std::string format_selection(const SpinSelection& sel) {
  if (sel.all) return "all";
  std::string out;
  for (int i : sel.spins.indices()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

struct PendingDelay {
  std::size_t event;
  int line;
};

}  // namespace

PulseProgram parse_program(std::string_view text, const std::optional<SpinSystem>& molecule,
                           const std::filesystem::path& base_dir) {
  PulseProgram p;
  std::vector<PendingDelay> symbolic;
  int line_no = 0;
  int use_line = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto tok = detail::split_ws(line);
    const auto key = detail::lower(tok[0]);
    const auto rest = detail::trim(line.substr(tok[0].size()));

    if (key == "pulse") {
      if (tok.size() != 4) throw ParseError(line_no, "expected: pulse <spins> <angle> <axis>");
      const auto sel = parse_selection(tok[1], line_no);
      const auto angle = detail::parse_double(tok[2]);
      if (!angle) throw ParseError(line_no, "malformed angle '" + std::string(tok[2]) + "'");
      if (!(*angle > -360.0 && *angle <= 360.0)) throw ParseError(line_no, "angle must lie in (-360, 360]");
      const auto axis = parse_axis(tok[3]);
      if (!axis) throw ParseError(line_no, "unknown axis '" + std::string(tok[3]) + "'");
      p.events.push_back(Pulse{sel, *angle, *axis});
    } else if (key == "delay") {
      std::string_view expr_text = rest;
      std::optional<PairSet> intent;
      const auto low = detail::lower(rest);
      const auto couple = low.find("couple");
      if (couple != std::string::npos) {
        expr_text = detail::trim(rest.substr(0, couple));
        const auto intent_text = detail::trim(rest.substr(couple + 6));
        if (intent_text.empty()) throw ParseError(line_no, "expected coupling list after 'couple'");
        intent = parse_intent(intent_text, line_no);
        if (!intent) intent = PairSet::all(kMaxSpins);
      }
      if (expr_text.empty()) throw ParseError(line_no, "expected: delay <seconds|expression>");
      DelayExpr expr;
      try {
        expr = DelayExpr::parse(expr_text);
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
      Delay d{expr, 0.0, intent};
      if (expr.is_symbolic()) {
        symbolic.push_back({p.events.size(), line_no});
      } else {
        d.seconds = expr.constant();
        if (d.seconds < 0.0) throw ParseError(line_no, "delay must be non-negative");
      }
      p.events.push_back(d);
    } else if (key == "grad") {
      if (tok.size() != 1) throw ParseError(line_no, "'grad' takes no arguments");
      p.events.push_back(Gradient{});
    } else if (key == "readout") {
      if (tok.size() != 2) throw ParseError(line_no, "expected: readout <spin>");
      const auto s = detail::parse_int(tok[1]);
      if (!s || *s < 1 || *s > kMaxSpins) throw ParseError(line_no, "invalid readout spin '" + std::string(tok[1]) + "'");
      p.events.push_back(Readout{static_cast<int>(*s)});
    } else if (key == "use") {
      if (tok.size() != 2) throw ParseError(line_no, "expected: use <molecule-file>");
      p.molecule = std::string(tok[1]);
      use_line = line_no;
    } else if (key == "name") {
      p.name = std::string(rest);
    } else if (key == "note") {
      p.note = std::string(rest);
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(tok[0]) + "'");
    }
  }

  if (symbolic.empty()) return p;

  std::optional<SpinSystem> sys = molecule;
  if (!sys && p.molecule) {
    try {
      sys = load_molecule(base_dir / *p.molecule);
    } catch (const std::exception& e) {
      throw ParseError(use_line, e.what());
    }
  }
  for (const auto& pd : symbolic) {
    auto& d = std::get<Delay>(p.events[pd.event]);
    if (!sys) throw ParseError(pd.line, "delay " + d.duration.to_string() + " references J but no molecule is available");
    try {
      d.seconds = d.duration.evaluate(*sys);
    } catch (const ArgumentError& e) {
      throw ParseError(pd.line, e.what());
    }
    if (d.seconds < 0.0) throw ParseError(pd.line, "delay evaluates to a negative time");
  }
  return p;
}

PulseProgram load_program(const std::filesystem::path& path, const std::optional<SpinSystem>& molecule) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open program file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str(), molecule, path.parent_path());
}

std::string format_program(const PulseProgram& p) {
  std::ostringstream out;
  out << "# spinlab pulse program\n";
  if (!p.name.empty()) out << "name " << p.name << '\n';
  if (!p.note.empty()) out << "note " << p.note << '\n';
  if (p.molecule) out << "use " << *p.molecule << '\n';
  for (const auto& e : p.events) {
    if (const auto* pulse = std::get_if<Pulse>(&e)) {
      out << "pulse " << format_selection(pulse->target) << ' ' << detail::format_shortest(pulse->angle_deg) << ' '
          << to_string(pulse->axis) << '\n';
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      out << "delay "
          << (d->duration.is_symbolic() ? d->duration.to_string() : detail::format_shortest(d->seconds));
      if (d->intent) out << " couple " << (*d->intent == PairSet::all(kMaxSpins) ? "all" : format_intent(*d->intent));
      out << '\n';
    } else if (std::holds_alternative<Gradient>(e)) {
      out << "grad\n";
    } else if (const auto* r = std::get_if<Readout>(&e)) {
      out << "readout " << r->spin << '\n';
    }
  }
  return out.str();
}

}  // namespace spinlab
