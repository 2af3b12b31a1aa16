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

#ifndef MPMH_BASELINE_HPP_
#define MPMH_BASELINE_HPP_

#include <span>
#include <vector>

#include "mpmh/network.hpp"
#include "mpmh/radio.hpp"
#include "mpmh/schedule.hpp"

namespace mpmh {

enum class BaselineKind { Fdmac, FdmacUr };

// 1 Gbps against the 2 Gbps = 1 packet/slot reference.
inline constexpr double kUniformPktsPerSlot = 0.5;

// One single-hop path per flow with positive demand and an unblocked direct
// link. Under FdmacUr every hop serves kUniformPktsPerSlot and is keyed to the
// lowest rate-table entry for its SINR threshold.
struct DirectProblem {
  ScheduleProblem problem;
  std::vector<int> unschedulable;  // positive demand, blocked direct link
};
DirectProblem direct_problem(std::span<const Flow> flows, const Topology& topology,
                             const RadioModel& radio, BaselineKind kind);

// Greedy coloring: flows sorted once by demand (non-increasing, then flow
// id); each pairing admits, in that order, every unscheduled flow whose link
// is non-adjacent to and SINR-compatible with the pairing so far. Pairing
// length is the largest admitted weight.
Schedule schedule_fdmac(const ScheduleProblem& problem, const Topology& topology,
                        const RadioModel& radio);

struct BaselinePlan {
  DirectProblem direct;
  Schedule schedule;
};
BaselinePlan plan_baseline(std::span<const Flow> flows, const Topology& topology,
                           const RadioModel& radio, BaselineKind kind);

}  // namespace mpmh

#endif  // MPMH_BASELINE_HPP_
