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

#include "spinlab/refocusing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spinlab/errors.hpp"
#include "text_util.hpp"

namespace spinlab {

bool is_refocusing_pulse(const PulseEvent& e) {
  const auto* p = std::get_if<Pulse>(&e);
  if (!p) return false;
  const auto base = base_axis(p->axis);
  return std::abs(p->angle_deg) == 180.0 && (base == SpinAxis::X || base == SpinAxis::Y);
}

TogglingTrace analyze(std::span<const PulseEvent> events, int n) {
  if (n < 1 || n > kMaxSpins) throw ArgumentError("spin count out of range");
  TogglingTrace tr;
  tr.spins = n;
  tr.shift_times.assign(n, 0.0);
  tr.coupling_times.assign(n * n, 0.0);
  tr.intended_coupling_times.assign(n * n, 0.0);
  tr.pi_counts.assign(n, 0);
  std::vector<int> sign(n, 1);

  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    if (const auto* d = std::get_if<Delay>(&e)) {
      tr.signs.push_back(sign);
      tr.segment_durations.push_back(d->seconds);
      tr.total_duration += d->seconds;
      for (int i = 0; i < n; ++i) tr.shift_times[i] += sign[i] * d->seconds;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double t = sign[i] * sign[j] * d->seconds;
          tr.coupling_times[i * n + j] += t;
          tr.coupling_times[j * n + i] += t;
          if (!d->intent || d->intent->contains(SpinPair(i + 1, j + 1))) {
            tr.intended_coupling_times[i * n + j] += t;
            tr.intended_coupling_times[j * n + i] += t;
          }
        }
      }
      continue;
    }
    if (!is_refocusing_pulse(e)) {
      std::string what = "event " + std::to_string(k + 1) + " ";
      if (const auto* p = std::get_if<Pulse>(&e)) {
        what += "(" + detail::format_shortest(p->angle_deg) + "-degree pulse about " + std::string(to_string(p->axis)) + ")";
      } else if (std::holds_alternative<Gradient>(e)) {
        what += "(gradient)";
      } else {
        what += "(readout)";
      }
      throw UnsupportedSegmentError(what + " is not a delay or a 180-degree x/y pulse");
    }
    const auto& p = std::get<Pulse>(e);
    const SpinSet target = p.target.resolve(n);
    if (target.max_index() > n) throw ArgumentError("event " + std::to_string(k + 1) + " addresses a spin beyond n");
    for (int i : target.indices()) {
      sign[i - 1] = -sign[i - 1];
      ++tr.pi_counts[i - 1];
    }
  }
  return tr;
}

TogglingTrace analyze(const PulseProgram& p, int n) { return analyze(std::span<const PulseEvent>(p.events), n); }

namespace {

struct Candidate {
  std::uint32_t mask = 0;
  int size = 0;
  double duration = 0.0;
  SpinPair limiting;
  std::vector<SpinPair> pairs;
};

PulseEvent pi_pulse(int n, std::uint32_t mask) {
  const auto set = SpinSet::from_mask(mask);
  if (set == SpinSet::all(n)) return Pulse{SpinSelection::every(), 180.0, SpinAxis::X};
  return Pulse{SpinSelection::of(set), 180.0, SpinAxis::X};
}

}  // namespace

PulseProgram synthesize(const SpinSystem& sys, const std::map<SpinPair, DelayExpr>& targets) {
  const int n = sys.size();
  std::map<SpinPair, DelayExpr> residual;
  std::map<SpinPair, double> residual_s;
  double scale = 0.0;
  for (const auto& [pair, expr] : targets) {
    if (pair.second > n) throw ArgumentError("target pair beyond the system size");
    const double t = expr.evaluate(sys);
    if (t < 0.0) throw ArgumentError("negative effective coupling time requested for J(" +
                                     std::to_string(pair.first) + "," + std::to_string(pair.second) + ")");
    residual[pair] = expr;
    residual_s[pair] = t;
    scale = std::max(scale, t);
  }
  const double tol = 1e-9 * std::max(scale, 1e-300);

  PulseProgram out;
  std::vector<int> frame(n, 1);  // current frame sign per spin
  auto flip_to = [&](const std::vector<int>& want) {
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
      if (want[i] != frame[i]) mask |= 1U << i;
    }
    if (mask) out.events.push_back(pi_pulse(n, mask));
    frame = want;
  };

  while (true) {
    std::optional<Candidate> best;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      if (std::popcount(mask) < 2) continue;
      Candidate c{mask, std::popcount(mask), 0.0, {}, {}};
      bool ok = true;
      for (int i = 1; i <= n && ok; ++i) {
        for (int j = i + 1; j <= n && ok; ++j) {
          if (!((mask >> (i - 1)) & 1U) || !((mask >> (j - 1)) & 1U)) continue;
          const SpinPair pr(i, j);
          const auto it = residual_s.find(pr);
          if (it == residual_s.end() || it->second <= tol) {
            ok = false;
            break;
          }
          if (c.pairs.empty() || it->second < c.duration) {
            c.duration = it->second;
            c.limiting = pr;
          }
          c.pairs.push_back(pr);
        }
      }
      if (!ok) continue;
      const bool better = !best || c.size > best->size ||
                          (c.size == best->size && (c.duration > best->duration ||
                                                    (c.duration == best->duration && c.pairs < best->pairs)));
      if (better) best = c;
    }
    if (!best) break;

    const DelayExpr block = residual[best->limiting];
    const int m = n - best->size;
    int length = 1;
    while (length < m + 2) length <<= 1;

    // Walsh index per spin: spectators 1..m, the evolving set m+1.
    std::vector<int> walsh(n, 0);
    int next = 1;
    for (int i = 0; i < n; ++i) {
      if (!((best->mask >> i) & 1U)) walsh[i] = next++;
    }
    for (int i = 0; i < n; ++i) {
      if ((best->mask >> i) & 1U) walsh[i] = m + 1;
    }
    // The evolving set shares the frame sign of its lowest spin; spectators
    // keep their own.
    const int lead = std::countr_zero(best->mask);
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) base[i] = ((best->mask >> i) & 1U) ? frame[lead] : frame[i];

    PairSet intent;
    for (const auto& pr : best->pairs) intent.insert(pr);
    const DelayExpr segment = block.scaled(1, length).normalized();
    for (int a = 0; a < length; ++a) {
      std::vector<int> want(n);
      for (int i = 0; i < n; ++i) want[i] = base[i] * ((std::popcount(static_cast<unsigned>(a & walsh[i])) & 1) ? -1 : 1);
      flip_to(want);
      out.events.push_back(make_delay(segment, sys, intent));
    }

    for (const auto& pr : best->pairs) {
      residual[pr] = (residual[pr] - block).normalized();
      residual_s[pr] = residual[pr].evaluate(sys);
      if (std::abs(residual_s[pr]) <= tol) residual_s[pr] = 0.0;
    }
  }
  flip_to(std::vector<int>(n, 1));
  return out;
}

}  // namespace spinlab
