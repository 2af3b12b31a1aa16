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

#include "mpmh/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "mpmh/baseline.hpp"
#include "mpmh/error.hpp"
#include "mpmh/milp/solver.hpp"

namespace mpmh {

std::string to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::Mpmh: return "mpmh";
    case SchedulerKind::Fdmac: return "fdmac";
    case SchedulerKind::FdmacUr: return "fdmac-ur";
    case SchedulerKind::Oracle: return "oracle";
  }
  return "?";
}

SchedulerKind parse_scheduler(const std::string& name) {
  for (auto k : {SchedulerKind::Mpmh, SchedulerKind::Fdmac, SchedulerKind::FdmacUr,
                 SchedulerKind::Oracle}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown scheduler '" + name + "' (expected mpmh, fdmac, fdmac-ur, oracle)");
}

std::string to_string(Admission a) {
  switch (a) {
    case Admission::Truncate: return "truncate";
    case Admission::Proportional: return "proportional";
    case Admission::Fair: return "fair";
  }
  return "?";
}

Admission parse_admission(const std::string& name) {
  for (Admission a : {Admission::Truncate, Admission::Proportional, Admission::Fair}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("unknown admission policy '" + name + "' (expected truncate, proportional or fair)");
}

void SimParams::validate() const {
  if (length_slots < 1) throw ConfigError("sim.length_slots must be >= 1");
  if (delay_threshold < 0) throw ConfigError("sim.delay_threshold must be >= 0");
  if (poll_slots < 0 || sched_slots < 0 || push_slots < 0) {
    throw ConfigError("sim overhead slots must be >= 0");
  }
  if (!(ema_alpha > 0) || ema_alpha > 1) throw ConfigError("sim.ema_alpha must lie in (0, 1]");
  if (initial_packets_max < 0) throw ConfigError("sim.initial_packets_max must be >= 0");
}

FrameOutcome account_frame(const ScheduleProblem& problem, const Schedule& schedule,
                           PathQueues queues, std::int64_t start_slot, bool clipped) {
  const std::size_t P = problem.paths.size();
  if (queues.size() != P) throw AccountingError("account_frame: one queue set per path required");

  std::vector<std::vector<int>> pos(P);
  for (std::size_t p = 0; p < P; ++p) {
    pos[p].assign(problem.paths[p].hops.size(), -1);
    if (queues[p].size() > problem.paths[p].hops.size()) {
      throw AccountingError("account_frame: path " + std::to_string(p) + " has more queues than hops");
    }
    queues[p].resize(problem.paths[p].hops.size());
  }
  for (int k = 0; k < schedule.size(); ++k) {
    for (const HopRef& r : schedule.pairings[static_cast<std::size_t>(k)].hops) {
      auto& slot = pos.at(static_cast<std::size_t>(r.path)).at(static_cast<std::size_t>(r.hop));
      if (slot >= 0) throw AccountingError("account_frame: hop scheduled twice");
      slot = k;
    }
  }
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t i = 0; i + 1 < pos[p].size(); ++i) {
      if (pos[p][i + 1] >= 0 && pos[p][i] >= 0 && pos[p][i] >= pos[p][i + 1]) {
        throw AccountingError("account_frame: path " + std::to_string(p) + " hop " +
                              std::to_string(i + 2) + " runs before hop " + std::to_string(i + 1));
      }
      if (pos[p][i + 1] >= 0 && pos[p][i] < 0 && !queues[p][i].empty()) {
        throw AccountingError("account_frame: path " + std::to_string(p) + " hop " +
                              std::to_string(i + 2) + " runs while hop " + std::to_string(i + 1) +
                              " holds packets but is unscheduled");
      }
    }
  }

  FrameOutcome out;
  std::int64_t t = start_slot;
  for (const Pairing& pairing : schedule.pairings) {
    const std::int64_t end = t + pairing.delta;
    for (const HopRef& r : pairing.hops) {
      const HopTask& hop = problem.hop(r.path, r.hop);
      const auto cap = static_cast<std::int64_t>(
          std::floor(static_cast<double>(pairing.delta) * hop.pkts_per_slot + 1e-9));
      auto& path_queues = queues[static_cast<std::size_t>(r.path)];
      auto& here = path_queues[static_cast<std::size_t>(r.hop)];
      const bool last = static_cast<std::size_t>(r.hop) + 1 == path_queues.size();
      for (std::int64_t n = 0; n < cap && !here.empty(); ++n) {
        const std::int64_t pkt = here.front();
        here.pop_front();
        if (last) {
          out.delivered.push_back({r.path, pkt, end});
        } else {
          path_queues[static_cast<std::size_t>(r.hop) + 1].push_back(pkt);
        }
      }
    }
    t = end;
  }

  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < queues[p].size(); ++i) {
      if (!clipped && !queues[p][i].empty()) {
        throw AccountingError("account_frame: path " + std::to_string(p) + " left " +
                              std::to_string(queues[p][i].size()) + " packets before hop " +
                              std::to_string(i + 1) + " in an unclipped frame");
      }
    }
  }
  out.leftover = std::move(queues);
  return out;
}

namespace {

struct FramePlan {
  ScheduleProblem problem;
  Schedule schedule;
  // Per task: the full route and the route hop its first task hop stands for.
  std::vector<const Path*> route;
  std::vector<int> offset;
  bool focus_multipath = false;
};

constexpr int kProportionalRounds = 8;

// Packets parked at relays: relay[i] waits for hop i of the route (i >= 1).
struct RelayKey {
  int flow = 0;
  std::vector<NodeId> nodes;
  friend auto operator<=>(const RelayKey&, const RelayKey&) = default;
};
using RelayMap = std::map<RelayKey, std::vector<std::deque<std::int64_t>>>;

std::int64_t relay_size(const RelayMap& relays) {
  std::int64_t n = 0;
  for (const auto& [key, hops] : relays) {
    for (const auto& q : hops) n += static_cast<std::int64_t>(q.size());
  }
  return n;
}

// Per-run scheduler with caches that depend only on the static topology.
class FrameScheduler {
 public:
  FrameScheduler(const SimScenario& sc, SchedulerKind kind) : sc_(sc), kind_(kind) {}

  FramePlan plan(const std::vector<Flow>& flows, const RelayMap& relays) {
    FramePlan out;
    out.problem.node_count = sc_.topology.size();
    if (kind_ == SchedulerKind::Fdmac || kind_ == SchedulerKind::FdmacUr) {
      BaselinePlan b = plan_baseline(flows, sc_.topology, sc_.radio,
                                     kind_ == SchedulerKind::Fdmac ? BaselineKind::Fdmac
                                                                   : BaselineKind::FdmacUr);
      out.problem = std::move(b.direct.problem);
      out.schedule = std::move(b.schedule);
      for (const PathTask& t : out.problem.paths) {
        out.route.push_back(&direct(flows[static_cast<std::size_t>(t.flow_id)]));
        out.offset.push_back(0);
      }
      return out;
    }

    FlowSelection sel = select_mpmh_flows(flows, sc_.topology, sc_.mpmh.epsilon);
    for (int id : sc_.forced_multipath) sel.flow_ids.push_back(id);
    std::sort(sel.flow_ids.begin(), sel.flow_ids.end());
    std::set<std::pair<int, const Path*>> planned;
    for (const Flow& f : flows) {
      const bool multi = std::binary_search(sel.flow_ids.begin(), sel.flow_ids.end(), f.id);
      const std::vector<Path>& routes = multi ? multipath(f) : direct_set(f);
      if (routes.empty()) continue;  // unschedulable this frame
      const std::vector<std::int64_t> split =
          f.demand_pkts > 0 ? distribute_traffic(routes, f.demand_pkts)
                            : std::vector<std::int64_t>(routes.size(), 0);
      if (f.id == sc_.focus_flow) {
        out.focus_multipath = std::count_if(split.begin(), split.end(), [](auto d) { return d > 0; }) > 1;
      }
      for (std::size_t p = 0; p < routes.size(); ++p) {
        add_task(out, f.id, static_cast<int>(p), routes[p], split[p], relays);
        planned.insert({f.id, &routes[p]});
      }
    }
    // Relayed packets of routes not in use this frame still need to move on.
    for (const auto& [key, parked] : relays) {
      const Flow& f = flows[static_cast<std::size_t>(key.flow)];
      const std::vector<Path>& routes = multipath(f);
      for (std::size_t p = 0; p < routes.size(); ++p) {
        if (routes[p].nodes() != key.nodes || planned.count({f.id, &routes[p]})) continue;
        add_task(out, f.id, static_cast<int>(p), routes[p], 0, relays);
      }
    }
    if (kind_ == SchedulerKind::Mpmh) {
      out.schedule = schedule_transmissions(out.problem, sc_.topology, sc_.radio);
    } else {
      out.schedule = exact(out);
    }
    return out;
  }

 private:
  // Appends the suffix of `route` that carries traffic: new packets enter at
  // hop 0, parked packets at their relay.
  void add_task(FramePlan& out, int flow, int index, const Path& route, std::int64_t fresh,
                const RelayMap& relays) const {
    const auto it = relays.find(RelayKey{flow, route.nodes()});
    std::vector<std::int64_t> load(static_cast<std::size_t>(route.hop_count()));
    std::int64_t carried = fresh;
    for (int i = 0; i < route.hop_count(); ++i) {
      if (i > 0 && it != relays.end()) carried += static_cast<std::int64_t>(it->second[static_cast<std::size_t>(i)].size());
      load[static_cast<std::size_t>(i)] = carried;
    }
    int first = 0;
    while (first < route.hop_count() && load[static_cast<std::size_t>(first)] == 0) ++first;
    if (first == route.hop_count()) return;
    PathTask task;
    task.flow_id = flow;
    task.path_index = index;
    task.demand = fresh;
    for (int i = first; i < route.hop_count(); ++i) {
      const int c = route.rate(i);
      task.hops.push_back({route.hop(i), c, static_cast<double>(c), hop_weight(load[static_cast<std::size_t>(i)], c)});
    }
    out.problem.paths.push_back(std::move(task));
    out.route.push_back(&route);
    out.offset.push_back(first);
  }

  const std::vector<Path>& direct_set(const Flow& f) {
    auto it = direct_.find(f.id);
    if (it == direct_.end()) {
      std::vector<Path> p;
      if (!sc_.topology.blocked({f.src, f.dst})) p.emplace_back(std::vector<NodeId>{f.src, f.dst}, sc_.topology);
      it = direct_.emplace(f.id, std::move(p)).first;
    }
    return it->second;
  }

  const Path& direct(const Flow& f) {
    const auto& set = direct_set(f);
    if (set.empty()) throw ScheduleError("flow " + std::to_string(f.id) + ": direct link is blocked");
    return set.front();
  }

  const std::vector<Path>& multipath(const Flow& f) {
    auto it = paths_.find(f.id);
    if (it == paths_.end()) {
      std::vector<Path> p = select_paths(sc_.topology, f, sc_.mpmh.h_max);
      if (p.empty()) p = direct_set(f);
      it = paths_.emplace(f.id, std::move(p)).first;
    }
    return it->second;
  }

  Schedule exact(const FramePlan& plan) {
    const ScheduleProblem& problem = plan.problem;
    if (problem.total_hops() > kOracleMaxHops) {
      throw ConfigError("oracle scheduler: " + std::to_string(problem.total_hops()) +
                        " hops in one frame exceeds the exact-search limit of " +
                        std::to_string(kOracleMaxHops));
    }
    std::vector<std::int64_t> key;
    for (std::size_t t = 0; t < problem.paths.size(); ++t) {
      const PathTask& p = problem.paths[t];
      key.push_back(-1 - p.flow_id);
      key.push_back(p.path_index);
      key.push_back(plan.offset[t]);
      for (const HopTask& h : p.hops) key.push_back(h.weight);
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const auto res = milp::enumerate_exact(problem, sc_.topology, sc_.radio);
    if (!res) throw ScheduleError("oracle scheduler: no feasible schedule");
    return memo_.emplace(std::move(key), res->schedule).first->second;
  }

  static constexpr int kOracleMaxHops = 10;
  const SimScenario& sc_;
  SchedulerKind kind_;
  std::map<int, std::vector<Path>> paths_;
  std::map<int, std::vector<Path>> direct_;
  std::map<std::vector<std::int64_t>, Schedule> memo_;
};

}  // namespace

MetricsReport run_with_arrivals(const SimScenario& sc, SchedulerKind kind,
                                std::span<const ArrivalStream> arrivals,
                                const RunOptions& options) {
  sc.sim.validate();
  sc.mpmh.validate();
  const std::size_t V = sc.flows.size();
  if (arrivals.size() != V) throw ConfigError("run: one arrival stream per flow required");
  const SimParams& sp = sc.sim;

  MetricsReport rep;
  rep.flows.resize(V);
  std::vector<std::deque<std::int64_t>> queue(V);
  RelayMap relays;
  std::vector<std::size_t> next(V, 0);
  std::vector<double> intensity(V, 0.0);
  std::vector<bool> observed(V, false);
  std::vector<Flow> flows = sc.flows;

  for (std::size_t v = 0; v < V; ++v) {
    for (double t : arrivals[v]) {
      if (t < static_cast<double>(sp.length_slots)) ++rep.flows[v].arrivals;
    }
  }

  auto record = [&](std::size_t v, std::int64_t arrival, std::int64_t slot) {
    FlowStats& fs = rep.flows[v];
    if (slot > sp.length_slots) {
      ++fs.queued;
    } else if (slot - arrival > sp.delay_threshold) {
      ++fs.dropped;
    } else {
      ++fs.delivered;
      fs.delay_sum += static_cast<double>(slot - arrival);
    }
  };

  FrameScheduler scheduler(sc, kind);
  const std::int64_t cap = sc.mpmh.frame_slot_cap;

  // Shrinks the demand snapshot in `flows` so the schedule fits the frame cap.
  auto admit = [&](FramePlan plan, std::vector<Flow>& flows) {
    if (sp.admission == Admission::Proportional) {
      for (int round = 0; round < kProportionalRounds && plan.schedule.total_slots() > cap; ++round) {
        const double scale = static_cast<double>(cap) / static_cast<double>(plan.schedule.total_slots());
        for (Flow& f : flows) {
          f.demand_pkts = static_cast<std::int64_t>(std::floor(static_cast<double>(f.demand_pkts) * scale));
        }
        ++rep.admission_rounds;
        plan = scheduler.plan(flows, relays);
      }
    } else if (sp.admission == Admission::Fair) {
      const std::vector<Flow> backlog = flows;
      auto at_level = [&](std::int64_t level) {
        for (std::size_t v = 0; v < V; ++v) flows[v].demand_pkts = std::min(backlog[v].demand_pkts, level);
        ++rep.admission_rounds;
        return scheduler.plan(flows, relays);
      };
      std::int64_t lo = 0;
      std::int64_t hi = 0;
      for (const Flow& f : backlog) hi = std::max(hi, f.demand_pkts);
      FramePlan best = at_level(lo);
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        FramePlan p = at_level(mid);
        if (p.schedule.total_slots() <= cap) {
          lo = mid;
          best = std::move(p);
        } else {
          hi = mid;
        }
      }
      for (std::size_t v = 0; v < V; ++v) flows[v].demand_pkts = std::min(backlog[v].demand_pkts, lo);
      plan = std::move(best);
    }
    return plan;
  };

  std::int64_t slot = 0;
  std::int64_t last_frame = 0;
  std::int64_t frame_total = 0;
  while (slot < sp.length_slots) {
    const std::int64_t frame_start = slot;
    slot += sp.poll_slots;

    // Poll: ingest arrivals, refresh intensity, age out stale packets.
    for (std::size_t v = 0; v < V; ++v) {
      std::int64_t got = 0;
      const auto& s = arrivals[v];
      while (next[v] < s.size() && s[next[v]] < static_cast<double>(std::min(slot, sp.length_slots))) {
        queue[v].push_back(static_cast<std::int64_t>(std::floor(s[next[v]])));
        ++next[v];
        ++got;
      }
      if (last_frame > 0) {
        const double sample = static_cast<double>(got) / static_cast<double>(last_frame);
        intensity[v] = observed[v] ? demand_intensity_update(intensity[v], got, last_frame, sp.ema_alpha)
                                   : sample;
        observed[v] = true;
      }
      while (!queue[v].empty() && slot - queue[v].front() > sp.delay_threshold) {
        ++rep.flows[v].dropped;
        queue[v].pop_front();
      }
      flows[v].demand_pkts = static_cast<std::int64_t>(queue[v].size());
      flows[v].demand_intensity = intensity[v];
    }
    for (auto it = relays.begin(); it != relays.end();) {
      bool empty = true;
      for (auto& q : it->second) {
        rep.flows[static_cast<std::size_t>(it->first.flow)].dropped +=
            std::erase_if(q, [&](std::int64_t a) { return slot - a > sp.delay_threshold; });
        empty = empty && q.empty();
      }
      it = empty ? relays.erase(it) : std::next(it);
    }

    FramePlan plan;
    try {
      plan = scheduler.plan(flows, relays);
      if (plan.schedule.total_slots() > cap) plan = admit(std::move(plan), flows);
      if (options.validate) require_valid_schedule(plan.problem, plan.schedule, sc.topology, sc.radio);
    } catch (const Error& e) {
      throw ScheduleError("frame " + std::to_string(rep.frames) + ": " + e.what());
    }
    slot += sp.sched_slots + sp.push_slots;

    const CappedSchedule capped = cap_schedule(plan.schedule, cap);
    if (capped.clipped) ++rep.clipped_frames;
    if (plan.focus_multipath) ++rep.multipath_frames;

    // New packets enter each route in route order from the flow's queue head;
    // parked packets rejoin at their relay.
    PathQueues per_path(plan.problem.paths.size());
    for (std::size_t p = 0; p < plan.problem.paths.size(); ++p) {
      const PathTask& task = plan.problem.paths[p];
      per_path[p].resize(task.hops.size());
      auto& q = queue[static_cast<std::size_t>(task.flow_id)];
      for (std::int64_t n = 0; n < task.demand; ++n) {
        per_path[p][0].push_back(q.front());
        q.pop_front();
      }
      auto parked = relays.find(RelayKey{task.flow_id, plan.route[p]->nodes()});
      if (parked == relays.end()) continue;
      for (std::size_t i = 0; i < task.hops.size(); ++i) {
        const std::size_t route_hop = i + static_cast<std::size_t>(plan.offset[p]);
        if (route_hop == 0) continue;
        auto& src = parked->second[route_hop];
        per_path[p][i].insert(per_path[p][i].begin(), src.begin(), src.end());
        src.clear();
      }
    }
    FrameOutcome outcome =
        account_frame(plan.problem, capped.schedule, std::move(per_path), slot, capped.clipped);
    for (const Delivery& d : outcome.delivered) {
      record(static_cast<std::size_t>(plan.problem.paths[static_cast<std::size_t>(d.path)].flow_id),
             d.arrival, d.slot);
    }
    // Packets that never left the source return to the queue head; the rest
    // wait at the relay they reached.
    std::vector<std::vector<std::int64_t>> back(V);
    for (std::size_t p = 0; p < outcome.leftover.size(); ++p) {
      const PathTask& task = plan.problem.paths[p];
      for (std::size_t i = 0; i < outcome.leftover[p].size(); ++i) {
        auto& left = outcome.leftover[p][i];
        if (left.empty()) continue;
        const std::size_t route_hop = i + static_cast<std::size_t>(plan.offset[p]);
        if (route_hop == 0) {
          auto& dst = back[static_cast<std::size_t>(task.flow_id)];
          dst.insert(dst.end(), left.begin(), left.end());
          continue;
        }
        auto& parked = relays[RelayKey{task.flow_id, plan.route[p]->nodes()}];
        parked.resize(static_cast<std::size_t>(plan.route[p]->hop_count()));
        std::sort(left.begin(), left.end());
        parked[route_hop].insert(parked[route_hop].end(), left.begin(), left.end());
      }
    }
    for (std::size_t v = 0; v < V; ++v) {
      std::sort(back[v].begin(), back[v].end());
      for (auto it = back[v].rbegin(); it != back[v].rend(); ++it) queue[v].push_front(*it);
    }

    slot += capped.schedule.total_slots();
    last_frame = slot - frame_start;
    rep.frame_slots.push_back(last_frame);
    frame_total += last_frame;
    ++rep.frames;
  }

  std::int64_t delivered = 0;
  double delay_sum = 0;
  for (const auto& [key, parked] : relays) {
    for (const auto& q : parked) rep.flows[static_cast<std::size_t>(key.flow)].queued += static_cast<std::int64_t>(q.size());
  }
  rep.relayed_at_end = relay_size(relays);
  for (std::size_t v = 0; v < V; ++v) {
    FlowStats& fs = rep.flows[v];
    fs.queued += static_cast<std::int64_t>(queue[v].size());
    for (std::size_t i = next[v]; i < arrivals[v].size(); ++i) {
      if (arrivals[v][i] < static_cast<double>(sp.length_slots)) ++fs.queued;
    }
    delivered += fs.delivered;
    delay_sum += fs.delay_sum;
  }
  rep.throughput = delivered;
  if (delivered > 0) rep.avg_delay = delay_sum / static_cast<double>(delivered);
  if (sc.focus_flow >= 0 && static_cast<std::size_t>(sc.focus_flow) < V) {
    const FlowStats& fs = rep.flows[static_cast<std::size_t>(sc.focus_flow)];
    rep.flow_throughput = fs.delivered;
    if (fs.delivered > 0) rep.flow_delay = fs.delay_sum / static_cast<double>(fs.delivered);
  }
  rep.mean_frame_slots = rep.frames > 0 ? static_cast<double>(frame_total) / static_cast<double>(rep.frames) : 0.0;
  return rep;
}

MetricsReport run(const SimScenario& sc, SchedulerKind kind, std::uint64_t seed,
                  const RunOptions& options) {
  if (!sc.replay.empty()) return run_with_arrivals(sc, kind, sc.replay, options);
  const std::vector<double> rates = flow_rates_per_slot(sc.traffic, sc.traffic_weights);
  auto streams = generate(sc.traffic.mode, rates, static_cast<double>(sc.sim.length_slots), seed);
  if (sc.sim.initial_packets_max > 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0x696e6974u};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> count(1, sc.sim.initial_packets_max);
    for (auto& s : streams) s.insert(s.begin(), static_cast<std::size_t>(count(rng)), 0.0);
  }
  return run_with_arrivals(sc, kind, streams, options);
}

namespace {

void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0;
  sd = 0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<SweepAggregate> aggregate(std::span<const SweepCell> cells) {
  std::vector<SweepAggregate> out;
  std::size_t i = 0;
  while (i < cells.size()) {
    std::size_t j = i;
    while (j < cells.size() && cells[j].scheduler == cells[i].scheduler && cells[j].load == cells[i].load) ++j;
    SweepAggregate a;
    a.scheduler = cells[i].scheduler;
    a.load = cells[i].load;
    std::vector<double> delay, thr, fdelay, fthr, frames, fslots;
    for (std::size_t c = i; c < j; ++c) {
      ++a.runs;
      if (!cells[c].report) {
        ++a.failures;
        continue;
      }
      const MetricsReport& r = *cells[c].report;
      if (r.avg_delay) delay.push_back(*r.avg_delay);
      if (r.flow_delay) fdelay.push_back(*r.flow_delay);
      thr.push_back(static_cast<double>(r.throughput));
      fthr.push_back(static_cast<double>(r.flow_throughput));
      frames.push_back(static_cast<double>(r.frames));
      fslots.push_back(r.mean_frame_slots);
    }
    double sd_unused = 0;
    mean_sd(delay, a.avg_delay_mean, a.avg_delay_sd);
    mean_sd(thr, a.throughput_mean, a.throughput_sd);
    mean_sd(fdelay, a.flow_delay_mean, a.flow_delay_sd);
    mean_sd(fthr, a.flow_throughput_mean, a.flow_throughput_sd);
    mean_sd(frames, a.frames_mean, sd_unused);
    mean_sd(fslots, a.mean_frame_slots_mean, sd_unused);
    out.push_back(a);
    i = j;
  }
  return out;
}

SweepResult sweep(const SimScenario& scenario, std::span<const double> loads,
                  std::span<const SchedulerKind> schedulers, std::span<const std::uint64_t> seeds,
                  int workers, const RunOptions& options) {
  if (loads.empty() || schedulers.empty() || seeds.empty()) {
    throw ConfigError("sweep: loads, schedulers and seeds must be non-empty");
  }
  SweepResult res;
  for (SchedulerKind k : schedulers) {
    for (double load : loads) {
      for (std::uint64_t seed : seeds) res.cells.push_back({k, load, seed, std::nullopt, {}});
    }
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < res.cells.size(); i = cursor++) {
      SweepCell& cell = res.cells[i];
      try {
        SimScenario sc = scenario;
        sc.traffic.load = cell.load;
        cell.report = run(sc, cell.scheduler, cell.seed, options);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const int n = std::max(1, workers);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  res.aggregates = aggregate(res.cells);
  return res;
}

}  // namespace mpmh
