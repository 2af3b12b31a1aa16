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

#include "mpmh/baseline.hpp"

#include <algorithm>
#include <numeric>

#include "mpmh/error.hpp"

namespace mpmh {

DirectProblem direct_problem(std::span<const Flow> flows, const Topology& topology,
                             const RadioModel& radio, BaselineKind kind) {
  DirectProblem out;
  out.problem.node_count = topology.size();
  for (const Flow& f : flows) {
    if (f.demand_pkts <= 0) continue;
    const Link l{f.src, f.dst};
    const int c = topology.rate(l);
    if (c == 0) {
      out.unschedulable.push_back(f.id);
      continue;
    }
    HopTask hop;
    hop.link = l;
    if (kind == BaselineKind::FdmacUr) {
      hop.rate = radio.lowest_rate();
      hop.pkts_per_slot = kUniformPktsPerSlot;
    } else {
      hop.rate = c;
      hop.pkts_per_slot = c;
    }
    hop.weight = hop_weight(f.demand_pkts, hop.pkts_per_slot);
    out.problem.paths.push_back({f.id, 0, f.demand_pkts, {hop}});
  }
  return out;
}

Schedule schedule_fdmac(const ScheduleProblem& problem, const Topology& topology,
                        const RadioModel& radio) {
  std::vector<int> order(problem.paths.size());
  std::iota(order.begin(), order.end(), 0);
  for (const PathTask& p : problem.paths) {
    if (p.hops.size() != 1) throw ScheduleError("schedule_fdmac: multi-hop path in problem");
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const PathTask& pa = problem.paths[static_cast<std::size_t>(a)];
    const PathTask& pb = problem.paths[static_cast<std::size_t>(b)];
    if (pa.demand != pb.demand) return pa.demand > pb.demand;
    return pa.flow_id < pb.flow_id;
  });

  const std::size_t max_links = static_cast<std::size_t>(problem.node_count / 2);
  std::vector<bool> done(problem.paths.size(), false);
  std::size_t remaining = problem.paths.size();
  Schedule schedule;
  while (remaining > 0) {
    Pairing pairing;
    std::vector<ActiveLink> active;
    for (int p : order) {
      if (done[static_cast<std::size_t>(p)] || active.size() >= max_links) continue;
      const HopTask& h = problem.hop(p, 0);
      const bool clash = std::any_of(active.begin(), active.end(),
                                     [&](const ActiveLink& a) { return adjacent(a.link, h.link); });
      if (clash) continue;
      active.push_back({h.link, h.rate});
      if (!pairing_feasible(radio, active, topology.positions())) {
        active.pop_back();
        continue;
      }
      pairing.hops.push_back({p, 0});
      pairing.delta = std::max(pairing.delta, h.weight);
      done[static_cast<std::size_t>(p)] = true;
      --remaining;
    }
    if (pairing.hops.empty()) {
      const auto it = std::find(done.begin(), done.end(), false);
      const HopTask& h = problem.hop(static_cast<int>(it - done.begin()), 0);
      throw ScheduleError("link " + topology.name(h.link.from) + "->" +
                          topology.name(h.link.to) + " cannot meet its SINR threshold");
    }
    std::sort(pairing.hops.begin(), pairing.hops.end());
    schedule.pairings.push_back(std::move(pairing));
  }
  return schedule;
}

BaselinePlan plan_baseline(std::span<const Flow> flows, const Topology& topology,
                           const RadioModel& radio, BaselineKind kind) {
  BaselinePlan plan;
  plan.direct = direct_problem(flows, topology, radio, kind);
  plan.schedule = schedule_fdmac(plan.direct.problem, topology, radio);
  return plan;
}

}  // namespace mpmh
