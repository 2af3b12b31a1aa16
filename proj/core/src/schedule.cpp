// Copyright 2026 The MPMH Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpmh/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mpmh/error.hpp"

namespace mpmh {

std::int64_t hop_weight(std::int64_t demand, double pkts_per_slot) {
  if (demand <= 0) return 0;
  if (!(pkts_per_slot > 0)) throw DomainError("hop_weight: service rate must be positive");
  // Integral rates take the exact integer path.
  const double r = std::round(pkts_per_slot);
  if (r == pkts_per_slot) {
    const auto c = static_cast<std::int64_t>(r);
    return (demand + c - 1) / c;
  }
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(demand) / pkts_per_slot - 1e-9));
}

int ScheduleProblem::total_hops() const {
  int n = 0;
  for (const PathTask& p : paths) n += static_cast<int>(p.hops.size());
  return n;
}

std::int64_t ScheduleProblem::max_weight() const {
  std::int64_t w = 0;
  for (const PathTask& p : paths) {
    for (const HopTask& h : p.hops) w = std::max(w, h.weight);
  }
  return w;
}

std::int64_t Schedule::total_slots() const {
  std::int64_t t = 0;
  for (const Pairing& p : pairings) t += p.delta;
  return t;
}

std::vector<std::string> validate_schedule(const ScheduleProblem& problem,
                                           const Schedule& schedule, const Topology& topology,
                                           const RadioModel& radio) {
  std::vector<std::string> errors;
  std::map<HopRef, std::vector<int>> placed;
  const auto hop_name = [&](HopRef r) {
    const Link l = problem.hop(r.path, r.hop).link;
    return topology.name(l.from) + "->" + topology.name(l.to) + "@" + std::to_string(r.path);
  };

  for (int k = 0; k < schedule.size(); ++k) {
    const Pairing& pairing = schedule.pairings[static_cast<std::size_t>(k)];
    const std::string where = "pairing " + std::to_string(k + 1) + ": ";
    if (pairing.delta < 0) errors.push_back(where + "negative duration");
    if (static_cast<int>(pairing.hops.size()) > problem.node_count / 2) {
      errors.push_back(where + "more than floor(n/2) links");
    }
    std::vector<ActiveLink> active;
    bool refs_ok = true;
    for (std::size_t a = 0; a < pairing.hops.size(); ++a) {
      const HopRef r = pairing.hops[a];
      if (r.path < 0 || r.path >= static_cast<int>(problem.paths.size()) || r.hop < 0 ||
          r.hop >= static_cast<int>(problem.paths[static_cast<std::size_t>(r.path)].hops.size())) {
        errors.push_back(where + "unknown hop reference");
        refs_ok = false;
        continue;
      }
      placed[r].push_back(k);
      const HopTask& h = problem.hop(r.path, r.hop);
      if (pairing.delta < h.weight) {
        errors.push_back(where + hop_name(r) + " needs " + std::to_string(h.weight) +
                         " slots, pairing has " + std::to_string(pairing.delta));
      }
      for (std::size_t b = 0; b < a; ++b) {
        const HopRef o = pairing.hops[b];
        if (o.path == r.path) errors.push_back(where + "two hops of path " + std::to_string(r.path));
        if (adjacent(problem.hop(o.path, o.hop).link, h.link)) {
          errors.push_back(where + hop_name(o) + " and " + hop_name(r) + " are adjacent");
        }
      }
      active.push_back({h.link, h.rate});
    }
    if (refs_ok) {
      try {
        if (!pairing_feasible(radio, active, topology.positions())) {
          errors.push_back(where + "SINR below MS(c) for at least one link");
        }
      } catch (const Error& e) {
        errors.push_back(where + e.what());
      }
    }
  }

  for (int p = 0; p < static_cast<int>(problem.paths.size()); ++p) {
    int previous = -1;
    const auto& hops = problem.paths[static_cast<std::size_t>(p)].hops;
    for (int i = 0; i < static_cast<int>(hops.size()); ++i) {
      const auto it = placed.find({p, i});
      if (it == placed.end()) {
        errors.push_back(hop_name({p, i}) + " hop " + std::to_string(i + 1) + " never scheduled");
        continue;
      }
      if (it->second.size() != 1) {
        errors.push_back(hop_name({p, i}) + " scheduled " + std::to_string(it->second.size()) +
                         " times");
      }
      const int k = it->second.front();
      if (k <= previous) {
        errors.push_back(hop_name({p, i}) + " scheduled before its preceding hop");
      }
      previous = k;
    }
  }
  return errors;
}

void require_valid_schedule(const ScheduleProblem& problem, const Schedule& schedule,
                            const Topology& topology, const RadioModel& radio) {
  const auto errors = validate_schedule(problem, schedule, topology, radio);
  if (!errors.empty()) throw ScheduleError("invalid schedule: " + errors.front());
}

std::string to_text(const ScheduleProblem& problem, const Schedule& schedule,
                    const Topology& topology) {
  std::ostringstream out;
  for (const Pairing& pairing : schedule.pairings) {
    out << pairing.delta;
    for (const HopRef& r : pairing.hops) {
      const Link l = problem.hop(r.path, r.hop).link;
      out << ' ' << topology.name(l.from) << "->" << topology.name(l.to) << '@' << r.path;
    }
    out << '\n';
  }
  return out.str();
}

CappedSchedule cap_schedule(const Schedule& schedule, std::int64_t cap) {
  CappedSchedule out;
  std::int64_t used = 0;
  for (const Pairing& p : schedule.pairings) {
    if (used + p.delta <= cap) {
      out.schedule.pairings.push_back(p);
      used += p.delta;
      continue;
    }
    out.clipped = true;
    if (out.schedule.pairings.empty()) {
      Pairing partial = p;
      partial.delta = cap;
      out.schedule.pairings.push_back(std::move(partial));
    }
    break;
  }
  return out;
}

}  // namespace mpmh
