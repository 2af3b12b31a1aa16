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

#ifndef MPMH_SCHEDULE_HPP_
#define MPMH_SCHEDULE_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mpmh/link.hpp"
#include "mpmh/network.hpp"
#include "mpmh/radio.hpp"

namespace mpmh {

// ceil(demand / pkts_per_slot); 0 for zero demand.
std::int64_t hop_weight(std::int64_t demand, double pkts_per_slot);

struct HopTask {
  Link link;
  int rate = 0;               // MCS rate, keys MS(c)
  double pkts_per_slot = 0;   // service rate used for the weight
  std::int64_t weight = 0;    // w_pi
};

// One path with positive distributed traffic.
struct PathTask {
  int flow_id = 0;
  int path_index = 0;  // position inside the flow's path set
  std::int64_t demand = 0;
  std::vector<HopTask> hops;
};

// Everything a scheduler (heuristic, baseline or exact) consumes.
struct ScheduleProblem {
  int node_count = 0;
  std::vector<PathTask> paths;

  int total_hops() const;
  std::int64_t max_weight() const;
  const HopTask& hop(int path, int hop) const {
    return paths[static_cast<std::size_t>(path)].hops[static_cast<std::size_t>(hop)];
  }
};

struct HopRef {
  int path = 0;
  int hop = 0;
  friend auto operator<=>(const HopRef&, const HopRef&) = default;
};

struct Pairing {
  std::vector<HopRef> hops;
  std::int64_t delta = 0;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct Schedule {
  std::vector<Pairing> pairings;

  std::int64_t total_slots() const;
  int size() const { return static_cast<int>(pairings.size()); }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Checks, for every hop and pairing:
//   scheduled exactly once; hops of a path in distinct, increasing pairings;
//   pairings are matchings of at most floor(n/2) links; delta >= weight;
//   every pairing passes the radio feasibility test.
// Returns one message per violation, empty when valid.
std::vector<std::string> validate_schedule(const ScheduleProblem& problem,
                                           const Schedule& schedule, const Topology& topology,
                                           const RadioModel& radio);

// Throws ScheduleError carrying the first violation.
void require_valid_schedule(const ScheduleProblem& problem, const Schedule& schedule,
                            const Topology& topology, const RadioModel& radio);

// One line per pairing: "<delta> <src>-><dst>@<path> ...".
std::string to_text(const ScheduleProblem& problem, const Schedule& schedule,
                    const Topology& topology);

// Keeps whole pairings while the running total fits `cap`. If even the first
// pairing is longer than `cap` it is kept, shortened to `cap` slots.
struct CappedSchedule {
  Schedule schedule;
  bool clipped = false;
};
CappedSchedule cap_schedule(const Schedule& schedule, std::int64_t cap);

}  // namespace mpmh

#endif  // MPMH_SCHEDULE_HPP_
