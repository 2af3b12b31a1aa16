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

#ifndef MPMH_SCHEME_HPP_
#define MPMH_SCHEME_HPP_

// Multiple-paths multi-hop scheduling: which flows go multi-path, which
// paths they use, how their demand is split, and the pairing schedule.

#include <cstdint>
#include <span>
#include <vector>

#include "mpmh/network.hpp"
#include "mpmh/radio.hpp"
#include "mpmh/schedule.hpp"

namespace mpmh {

struct MpmhParams {
  double epsilon = 0.0625;
  int h_max = 3;
  std::int64_t frame_slot_cap = 1000;

  void validate() const;  // throws ConfigError
};

struct FlowSelection {
  std::vector<int> flow_ids;  // ascending
  bool degenerate = false;    // no flow had a defined c/D ratio
};

// A flow is selected when its direct link is blocked, or when
//   (c_v / D_v) / avg_u (c_u / D_u) < epsilon.
// The average runs over flows with c_u > 0 and D_u > 0 only; flows with no
// measured demand are never selected unless blocked.
FlowSelection select_mpmh_flows(std::span<const Flow> flows, const Topology& topology,
                                double epsilon);

// Candidate enumeration up to h_max hops using only links at least as fast as
// the direct link, then greedy admission by descending bottleneck rate (ties:
// fewer hops, then node-id order) of hop-disjoint paths whose bottleneck hops
// are pairwise non-adjacent. The result is ordered by hop count, then node ids.
std::vector<Path> select_paths(const Topology& topology, const Flow& flow, int h_max);

// Split proportional to bottleneck rates with largest-remainder rounding;
// equal remainders go to the lower path index.
std::vector<std::int64_t> distribute_traffic(std::span<const Path> paths, std::int64_t demand);

// Direct path only, or the selected multi-path set; empty when nothing can
// carry the flow.
PathSet plan_flow(const Topology& topology, const Flow& flow, bool multipath, int h_max);

// Zero-split paths are dropped.
ScheduleProblem make_problem(std::span<const PathSet> path_sets, const Topology& topology);

// Pairing-by-pairing greedy schedule. Each pairing repeatedly takes the
// unvisited paths with the most unscheduled hops, picks the first unscheduled
// hop closest in weight to the current pairing duration, and admits it if it
// is non-adjacent and the pairing stays SINR-feasible. Throws ScheduleError
// when a hop can never be admitted.
Schedule schedule_transmissions(const ScheduleProblem& problem, const Topology& topology,
                                const RadioModel& radio);

struct MpmhPlan {
  FlowSelection selection;
  std::vector<PathSet> path_sets;
  std::vector<int> unschedulable;  // flow ids with demand but no usable path
  ScheduleProblem problem;
  Schedule schedule;
};

// Full pipeline for one frame. `forced` flows are treated as selected.
MpmhPlan plan_mpmh(std::span<const Flow> flows, const Topology& topology,
                   const RadioModel& radio, const MpmhParams& params,
                   std::span<const int> forced = {});

}  // namespace mpmh

#endif  // MPMH_SCHEME_HPP_
