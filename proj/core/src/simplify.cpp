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

#include <cmath>
#include <optional>

#include "spinlab/pulse_program.hpp"

namespace spinlab {

namespace {

// Combines two adjacent events. nullopt: no rule applies. An engaged but
// empty vector means the pair annihilated.
std::optional<std::vector<PulseEvent>> combine(const PulseEvent& a, const PulseEvent& b) {
  const auto* pa = std::get_if<Pulse>(&a);
  const auto* pb = std::get_if<Pulse>(&b);
  if (pa && pb && pa->target == pb->target) {
    if (pa->angle_deg == pb->angle_deg && pa->axis == negate(pb->axis)) return std::vector<PulseEvent>{};
    if (pa->axis == pb->axis) {
      const double sum = normalize_angle(pa->angle_deg + pb->angle_deg);
      if (sum == 0.0) return std::vector<PulseEvent>{};
      return std::vector<PulseEvent>{Pulse{pa->target, sum, pa->axis}};
    }
    return std::nullopt;
  }
  const auto* da = std::get_if<Delay>(&a);
  const auto* db = std::get_if<Delay>(&b);
  if (da && db && da->intent == db->intent) {
    Delay merged{(da->duration + db->duration).normalized(), da->seconds + db->seconds, da->intent};
    return std::vector<PulseEvent>{merged};
  }
  return std::nullopt;
}

bool is_zero_delay(const PulseEvent& e) {
  const auto* d = std::get_if<Delay>(&e);
  return d && d->seconds == 0.0;
}

}  // namespace

PulseProgram simplify(const PulseProgram& p) {
  PulseProgram out = p;
  out.events.clear();
  for (const auto& incoming : p.events) {
    if (is_zero_delay(incoming)) continue;
    std::optional<PulseEvent> cur = incoming;
    while (cur && !out.events.empty()) {
      auto r = combine(out.events.back(), *cur);
      if (!r) break;
      out.events.pop_back();
      cur = r->empty() ? std::nullopt : std::optional<PulseEvent>((*r)[0]);
      if (cur && is_zero_delay(*cur)) cur.reset();
    }
    if (cur) out.events.push_back(*cur);
  }
  return out;
}

}  // namespace spinlab
