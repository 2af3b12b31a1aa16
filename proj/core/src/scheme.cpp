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

#include "mpmh/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>

#include "mpmh/error.hpp"

namespace mpmh {

void MpmhParams::validate() const {
  if (!(epsilon > 0)) throw ConfigError("mpmh.epsilon must be > 0");
  if (h_max < 2) throw ConfigError("mpmh.h_max must be >= 2");
  if (frame_slot_cap < 1) throw ConfigError("mpmh.frame_slot_cap must be >= 1");
}

FlowSelection select_mpmh_flows(std::span<const Flow> flows, const Topology& topology,
                                double epsilon) {
  FlowSelection out;
  double sum = 0.0;
  int defined = 0;
  for (const Flow& f : flows) {
    const int c = topology.rate({f.src, f.dst});
    if (c > 0 && f.demand_intensity > 0) {
      sum += c / f.demand_intensity;
      ++defined;
    }
  }
  const double avg = defined > 0 ? sum / defined : 0.0;
  out.degenerate = defined == 0;
  for (const Flow& f : flows) {
    const int c = topology.rate({f.src, f.dst});
    if (c == 0) {
      out.flow_ids.push_back(f.id);
    } else if (defined > 0 && f.demand_intensity > 0 &&
               (c / f.demand_intensity) / avg < epsilon) {
      out.flow_ids.push_back(f.id);
    }
  }
  std::sort(out.flow_ids.begin(), out.flow_ids.end());
  return out;
}

std::vector<Path> select_paths(const Topology& topology, const Flow& flow, int h_max) {
  if (h_max < 1) throw ConfigError("select_paths: h_max must be >= 1");
  const int direct = topology.rate({flow.src, flow.dst});

  // Breadth-wise extension; a partial path is retired as soon as it reaches
  // the destination.
  std::vector<std::vector<NodeId>> frontier{{flow.src}};
  std::vector<Path> candidates;
  for (int h = 0; !frontier.empty() && h < h_max; ++h) {
    std::vector<std::vector<NodeId>> next;
    for (const auto& p : frontier) {
      for (NodeId i : topology.successors(p.back())) {
        if (topology.rate({p.back(), i}) < direct) continue;
        if (std::find(p.begin(), p.end(), i) != p.end()) continue;
        auto extended = p;
        extended.push_back(i);
        next.push_back(std::move(extended));
      }
    }
    frontier.clear();
    for (auto& p : next) {
      if (p.back() == flow.dst) {
        candidates.emplace_back(std::move(p), topology);
      } else {
        frontier.push_back(std::move(p));
      }
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(), [](const Path& a, const Path& b) {
    return std::make_tuple(-a.bottleneck_rate(), a.hop_count(), std::cref(a.nodes())) <
           std::make_tuple(-b.bottleneck_rate(), b.hop_count(), std::cref(b.nodes()));
  });

  std::vector<Path> selected;
  std::vector<Link> bottlenecks;
  for (const Path& p : candidates) {
    const bool disjoint = std::none_of(selected.begin(), selected.end(),
                                       [&](const Path& s) { return s.shares_hop(p); });
    if (!disjoint) continue;
    const Link hl = p.hop(p.bottleneck_hop());
    const bool spread = std::none_of(bottlenecks.begin(), bottlenecks.end(),
                                     [&](const Link& b) { return adjacent(b, hl); });
    if (!spread) continue;
    selected.push_back(p);
    bottlenecks.push_back(hl);
  }
  // Report the set in canonical order: fewer hops, then node ids.
  std::stable_sort(selected.begin(), selected.end(), [](const Path& a, const Path& b) {
    return std::make_tuple(a.hop_count(), std::cref(a.nodes())) <
           std::make_tuple(b.hop_count(), std::cref(b.nodes()));
  });
  return selected;
}

std::vector<std::int64_t> distribute_traffic(std::span<const Path> paths, std::int64_t demand) {
  if (paths.empty()) throw ConfigError("distribute_traffic: no paths");
  if (demand < 0) throw DomainError("distribute_traffic: negative demand");
  std::int64_t total_rate = 0;
  for (const Path& p : paths) total_rate += p.bottleneck_rate();

  std::vector<std::int64_t> split(paths.size());
  std::vector<std::pair<std::int64_t, std::size_t>> remainders;  // numerator of the fraction
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::int64_t num = demand * paths[i].bottleneck_rate();
    split[i] = num / total_rate;
    assigned += split[i];
    remainders.emplace_back(num % total_rate, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::int64_t k = 0; k < demand - assigned; ++k) {
    ++split[remainders[static_cast<std::size_t>(k)].second];
  }
  return split;
}

PathSet plan_flow(const Topology& topology, const Flow& flow, bool multipath, int h_max) {
  PathSet set;
  set.flow_id = flow.id;
  if (multipath) set.paths = select_paths(topology, flow, h_max);
  if (set.paths.empty() && !topology.blocked({flow.src, flow.dst})) {
    set.paths.emplace_back(std::vector<NodeId>{flow.src, flow.dst}, topology);
  }
  if (!set.paths.empty()) set.split = distribute_traffic(set.paths, flow.demand_pkts);
  return set;
}

ScheduleProblem make_problem(std::span<const PathSet> path_sets, const Topology& topology) {
  ScheduleProblem problem;
  problem.node_count = topology.size();
  for (const PathSet& set : path_sets) {
    for (std::size_t p = 0; p < set.paths.size(); ++p) {
      const std::int64_t d = set.split[p];
      if (d <= 0) continue;
      PathTask task;
      task.flow_id = set.flow_id;
      task.path_index = static_cast<int>(p);
      task.demand = d;
      const Path& path = set.paths[p];
      for (int i = 0; i < path.hop_count(); ++i) {
        const int c = path.rate(i);
        task.hops.push_back({path.hop(i), c, static_cast<double>(c), hop_weight(d, c)});
      }
      problem.paths.push_back(std::move(task));
    }
  }
  return problem;
}

namespace {

// Working state of the pairing construction.
struct SchedulerState {
  std::vector<int> next_hop;      // F_u(p), zero-based
  int unscheduled = 0;            // |H|
  std::vector<bool> in_pairing;   // V^t as a node mask
  std::vector<HopRef> hops;       // H^t
  std::int64_t delta = 0;         // delta^t
  std::vector<int> unvisited;     // P_u^t, ascending path id
};

int hops_left(const ScheduleProblem& pr, const SchedulerState& st, int p) {
  return static_cast<int>(pr.paths[static_cast<std::size_t>(p)].hops.size()) -
         st.next_hop[static_cast<std::size_t>(p)];
}

}  // namespace

Schedule schedule_transmissions(const ScheduleProblem& problem, const Topology& topology,
                                const RadioModel& radio) {
  const int path_count = static_cast<int>(problem.paths.size());
  const int max_links = problem.node_count / 2;
  SchedulerState st;
  st.next_hop.assign(static_cast<std::size_t>(path_count), 0);
  st.unscheduled = problem.total_hops();

  Schedule schedule;
  while (st.unscheduled > 0) {
    st.in_pairing.assign(static_cast<std::size_t>(problem.node_count), false);
    st.hops.clear();
    st.delta = 0;
    st.unvisited.clear();
    for (int p = 0; p < path_count; ++p) {
      if (hops_left(problem, st, p) > 0) st.unvisited.push_back(p);
    }
    std::optional<HopRef> first_rejected;

    while (!st.unvisited.empty() && static_cast<int>(st.hops.size()) < max_links) {
      int most = 0;
      for (int p : st.unvisited) most = std::max(most, hops_left(problem, st, p));

      int best = -1;
      std::int64_t best_gap = 0;
      std::int64_t best_w = 0;
      for (int p : st.unvisited) {
        if (hops_left(problem, st, p) != most) continue;
        const std::int64_t w = problem.hop(p, st.next_hop[static_cast<std::size_t>(p)]).weight;
        const std::int64_t gap = std::abs(st.delta - w);
        if (best < 0 || gap < best_gap || (gap == best_gap && w > best_w)) {
          best = p;
          best_gap = gap;
          best_w = w;
        }
      }

      const HopRef ref{best, st.next_hop[static_cast<std::size_t>(best)]};
      const HopTask& hop = problem.hop(ref.path, ref.hop);
      const auto from = static_cast<std::size_t>(hop.link.from);
      const auto to = static_cast<std::size_t>(hop.link.to);
      bool admitted = false;
      if (!st.in_pairing[from] && !st.in_pairing[to]) {
        st.hops.push_back(ref);
        std::vector<ActiveLink> active;
        for (const HopRef& r : st.hops) {
          const HopTask& h = problem.hop(r.path, r.hop);
          active.push_back({h.link, h.rate});
        }
        if (pairing_feasible(radio, active, topology.positions())) {
          st.in_pairing[from] = st.in_pairing[to] = true;
          st.delta = std::max(st.delta, hop.weight);
          ++st.next_hop[static_cast<std::size_t>(best)];
          --st.unscheduled;
          admitted = true;
        } else {
          st.hops.pop_back();
        }
      }
      if (!admitted && !first_rejected) first_rejected = ref;
      st.unvisited.erase(std::find(st.unvisited.begin(), st.unvisited.end(), best));
    }

    if (st.hops.empty()) {
      const HopTask& h = problem.hop(first_rejected->path, first_rejected->hop);
      throw ScheduleError("hop " + topology.name(h.link.from) + "->" + topology.name(h.link.to) +
                          " of path " + std::to_string(first_rejected->path) +
                          " cannot be scheduled: SINR below MS(c) even without interference");
    }
    schedule.pairings.push_back({st.hops, st.delta});
  }
  return schedule;
}

MpmhPlan plan_mpmh(std::span<const Flow> flows, const Topology& topology,
                   const RadioModel& radio, const MpmhParams& params,
                   std::span<const int> forced) {
  MpmhPlan plan;
  plan.selection = select_mpmh_flows(flows, topology, params.epsilon);
  for (int id : forced) {
    if (std::find(plan.selection.flow_ids.begin(), plan.selection.flow_ids.end(), id) ==
        plan.selection.flow_ids.end()) {
      plan.selection.flow_ids.push_back(id);
    }
  }
  std::sort(plan.selection.flow_ids.begin(), plan.selection.flow_ids.end());
  for (const Flow& f : flows) {
    if (f.demand_pkts <= 0) continue;
    const bool multi = std::binary_search(plan.selection.flow_ids.begin(),
                                          plan.selection.flow_ids.end(), f.id);
    PathSet set = plan_flow(topology, f, multi, params.h_max);
    if (set.paths.empty()) {
      plan.unschedulable.push_back(f.id);
      continue;
    }
    set.check_invariants(f.demand_pkts, topology.size());
    plan.path_sets.push_back(std::move(set));
  }
  plan.problem = make_problem(plan.path_sets, topology);
  plan.schedule = schedule_transmissions(plan.problem, topology, radio);
  return plan;
}

}  // namespace mpmh
