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

#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "mpmh/baseline.hpp"
#include "mpmh/error.hpp"
#include "mpmh/milp/solver.hpp"
#include "mpmh/scenario.hpp"
#include "mpmh/scheme.hpp"
#include "mpmh/sim.hpp"
#include "report.hpp"

namespace mpmh::app {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  try {
    if (text.find(',') == std::string::npos) {
      const long long n = std::stoll(text);
      if (n < 1) throw ConfigError("--seeds: count must be >= 1");
      for (long long i = 1; i <= n; ++i) out.push_back(static_cast<std::uint64_t>(i));
      return out;
    }
    for (const auto& s : split_list(text)) out.push_back(std::stoull(s));
  } catch (const std::logic_error&) {
    throw ConfigError("--seeds: expected a count or a comma list, got '" + text + "'");
  }
  if (out.empty()) throw ConfigError("--seeds: empty");
  return out;
}

std::vector<double> parse_loads(const std::string& text) {
  std::vector<double> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int a = std::stoi(text.substr(0, dots));
      const int b = std::stoi(text.substr(dots + 2));
      for (int x = a; x <= b; ++x) out.push_back(x);
    } else {
      for (const auto& s : split_list(text)) out.push_back(std::stod(s));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("--loads: expected a..b or a comma list, got '" + text + "'");
  }
  if (out.empty()) throw ConfigError("--loads: empty");
  for (double l : out) {
    if (!(l > 0)) throw ConfigError("--loads: loads must be > 0");
  }
  return out;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path output_root(const CommandOptions& options) {
  if (options.out_root) return *options.out_root;
  if (const char* env = std::getenv("MPMH_OUT_ROOT"); env != nullptr && *env != '\0') return env;
  return "mpmh-out";
}

namespace {

std::string describe_topology(const SimScenario& sc) {
  std::ostringstream o;
  const Topology& t = sc.topology;
  o << "nodes:\n";
  for (NodeId i = 0; i < t.size(); ++i) {
    const Node& n = t.node(i);
    o << "  " << n.name << " (" << fmt(n.position.x) << ", " << fmt(n.position.y) << ")"
      << (n.is_pnc ? " pnc" : "") << "\n";
  }
  o << "flows:\n";
  for (std::size_t i = 0; i < sc.flows.size(); ++i) {
    const Flow& f = sc.flows[i];
    o << "  " << f.id << ": " << t.name(f.src) << "->" << t.name(f.dst) << " rate " << t.rate({f.src, f.dst})
      << " weight " << fmt(sc.traffic_weights[i]) << "\n";
  }
  return o.str();
}

std::string path_sets_text(const std::vector<PathSet>& sets, const Topology& t) {
  std::ostringstream o;
  for (const PathSet& s : sets) {
    if (s.paths.size() < 2) continue;
    o << "flow " << s.flow_id << " paths:\n";
    for (std::size_t p = 0; p < s.paths.size(); ++p) {
      o << "  " << s.paths[p].describe(t) << "  bottleneck " << s.paths[p].bottleneck_rate() << "  split "
        << s.split[p] << "\n";
    }
  }
  return o.str();
}

struct Config {
  Scenario scenario;
  std::vector<SchedulerKind> schedulers;
  std::vector<std::uint64_t> seeds;
  std::vector<double> loads;
};

Config resolve(const CommandOptions& opt) {
  if (opt.command != "run" && opt.command != "sweep") {
    throw ConfigError("unknown command '" + opt.command + "' (expected run or sweep)");
  }
  if (opt.scenario.empty()) throw ConfigError("--scenario is required");
  if (opt.workers < 1) throw ConfigError("--workers must be >= 1");
  Config c{load_scenario(opt.scenario), {}, {}, {}};
  const auto names = opt.schedulers.empty() ? c.scenario.schedulers : opt.schedulers;
  for (const auto& n : names) {
    const SchedulerKind k = parse_scheduler(n);
    if (std::find(c.schedulers.begin(), c.schedulers.end(), k) == c.schedulers.end()) c.schedulers.push_back(k);
  }
  if (opt.oracle && std::find(c.schedulers.begin(), c.schedulers.end(), SchedulerKind::Oracle) == c.schedulers.end() &&
      !c.scenario.is_static()) {
    c.schedulers.push_back(SchedulerKind::Oracle);
  }
  if (c.schedulers.empty()) throw ConfigError("no scheduler selected");
  c.seeds = opt.seeds.empty() ? c.scenario.seeds : opt.seeds;
  if (!opt.loads.empty()) {
    c.loads = opt.loads;
  } else if (opt.command == "sweep") {
    c.loads = c.scenario.loads.empty() ? std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10} : c.scenario.loads;
  } else if (c.scenario.traffic) {
    c.loads = {c.scenario.traffic->load};
  }
  return c;
}

std::string fingerprint(const CommandOptions& opt, const Config& c) {
  std::ostringstream o;
  o << opt.command << '\n' << to_yaml(c.scenario) << "schedulers:";
  for (auto k : c.schedulers) o << ' ' << to_string(k);
  o << "\nseeds:";
  for (auto s : c.seeds) o << ' ' << s;
  o << "\nloads:";
  for (auto l : c.loads) o << ' ' << fmt(l);
  o << "\noracle: " << opt.oracle << "\nvalidate_only: " << opt.validate_only << '\n';
  return o.str();
}

struct StaticPlan {
  ScheduleProblem problem;
  Schedule schedule;
  std::vector<PathSet> path_sets;
};

StaticPlan plan_static(SchedulerKind k, const SimScenario& sc, const std::vector<Flow>& flows) {
  StaticPlan out;
  if (k == SchedulerKind::Fdmac || k == SchedulerKind::FdmacUr) {
    BaselinePlan b = plan_baseline(flows, sc.topology, sc.radio,
                                   k == SchedulerKind::Fdmac ? BaselineKind::Fdmac : BaselineKind::FdmacUr);
    if (!b.direct.unschedulable.empty()) {
      throw ScheduleError("flow " + std::to_string(b.direct.unschedulable.front()) +
                          " has a blocked direct link and no relay option");
    }
    out.problem = std::move(b.direct.problem);
    out.schedule = std::move(b.schedule);
    return out;
  }
  MpmhPlan p = plan_mpmh(flows, sc.topology, sc.radio, sc.mpmh, sc.forced_multipath);
  out.problem = std::move(p.problem);
  out.path_sets = std::move(p.path_sets);
  out.schedule = std::move(p.schedule);
  if (k == SchedulerKind::Oracle) {
    const auto exact = milp::solve_schedule(out.problem, sc.topology, sc.radio, {}, 0, &out.schedule);
    if (exact.status != milp::SolveStatus::Optimal) {
      throw ScheduleError("oracle: search ended with status " + milp::to_string(exact.status));
    }
    out.schedule = exact.solution.schedule;
  }
  return out;
}

int run_static(const CommandOptions& opt, const Config& c, const SimScenario& sc,
               const std::filesystem::path& dir, std::ostringstream& summary, std::ostream& log) {
  std::vector<Flow> flows = static_flows(c.scenario, sc.topology);
  for (Flow& f : flows) f.demand_intensity = sc.traffic_weights[static_cast<std::size_t>(f.id)];
  int status = 0;
  std::ostringstream csv;
  csv << "scheduler,pairings,total_slots,valid\n";
  std::optional<StaticPlan> heuristic;
  for (SchedulerKind k : c.schedulers) {
    try {
      StaticPlan p = plan_static(k, sc, flows);
      const auto violations = validate_schedule(p.problem, p.schedule, sc.topology, sc.radio);
      csv << to_string(k) << ',' << p.schedule.size() << ',' << p.schedule.total_slots() << ','
          << (violations.empty() ? "yes" : "no") << '\n';
      summary << to_string(k) << ": " << p.schedule.size() << " pairings, " << p.schedule.total_slots()
              << " slots" << (violations.empty() ? "" : " (INVALID)") << "\n";
      for (const auto& v : violations) summary << "  violation: " << v << "\n";
      if (!p.path_sets.empty() && k == SchedulerKind::Mpmh) summary << path_sets_text(p.path_sets, sc.topology);
      summary << to_text(p.problem, p.schedule, sc.topology);
      write_text(dir / ("schedule_" + to_string(k) + ".txt"), to_text(p.problem, p.schedule, sc.topology));
      if (!violations.empty()) status = 1;
      if (k == SchedulerKind::Mpmh) heuristic = std::move(p);
    } catch (const Error& e) {
      summary << to_string(k) << ": FAILED: " << e.what() << "\n";
      log << to_string(k) << ": " << e.what() << "\n";
      status = 1;
    }
  }
  write_text(dir / "schedules.csv", csv.str());

  if (opt.oracle && !opt.validate_only) {
    if (!heuristic) heuristic = plan_static(SchedulerKind::Mpmh, sc, flows);
    const auto exact = milp::solve_schedule(heuristic->problem, sc.topology, sc.radio, {}, 0, &heuristic->schedule);
    summary << "\noracle (fixed split): " << milp::to_string(exact.status) << ", " << exact.slots << " slots, "
            << exact.nodes << " nodes\n";
    summary << to_text(exact.solution.problem, exact.solution.schedule, sc.topology);
    if (!heuristic->path_sets.empty()) {
      const auto best = milp::split_search(heuristic->path_sets, sc.topology, sc.radio, 0, 1);
      summary << "oracle (split search, " << milp::to_string(best.mode) << ", granularity 1): " << best.slots
              << " slots, split";
      for (const auto& s : best.splits) {
        for (auto d : s) summary << ' ' << d;
      }
      summary << " over " << best.candidates << " candidate splits\n";
    }
    const std::int64_t h = heuristic->schedule.total_slots();
    summary << "heuristic " << h << " slots vs optimal " << exact.slots << " slots";
    if (exact.slots > 0) {
      summary << " (gap " << h - exact.slots << " slots, "
              << fmt(100.0 * static_cast<double>(h - exact.slots) / static_cast<double>(exact.slots)) << "%)";
    }
    summary << "\n";
  }
  return status;
}

int run_traffic(const CommandOptions& opt, const Config& c, const SimScenario& sc,
                const std::filesystem::path& dir, std::ostringstream& summary, std::ostream& log) {
  if (opt.validate_only) {
    // One nominal frame: expected arrivals over 100 slots at the first load.
    SimScenario nominal = sc;
    nominal.traffic.load = c.loads.front();
    const auto rates = flow_rates_per_slot(nominal.traffic, nominal.traffic_weights);
    std::vector<Flow> flows = sc.flows;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      flows[i].demand_pkts = static_cast<std::int64_t>(std::ceil(rates[i] * 100.0));
      flows[i].demand_intensity = rates[i];
    }
    int status = 0;
    for (SchedulerKind k : c.schedulers) {
      try {
        StaticPlan p = plan_static(k, sc, flows);
        const auto v = validate_schedule(p.problem, p.schedule, sc.topology, sc.radio);
        summary << to_string(k) << ": " << p.schedule.total_slots() << " slots, "
                << (v.empty() ? "valid" : "INVALID") << "\n";
        for (const auto& e : v) summary << "  violation: " << e << "\n";
        if (!v.empty()) status = 1;
      } catch (const Error& e) {
        summary << to_string(k) << ": FAILED: " << e.what() << "\n";
        status = 1;
      }
    }
    return status;
  }

  log << "sweeping " << c.schedulers.size() << " scheduler(s) x " << c.loads.size() << " load(s) x "
      << c.seeds.size() << " seed(s)\n";
  const SweepResult res = sweep(sc, c.loads, c.schedulers, c.seeds, opt.workers);
  write_text(dir / "runs.csv", runs_csv(res.cells));
  write_text(dir / "aggregate.csv", aggregate_csv(res.aggregates));
  for (auto m : {PlotMetric::AvgDelay, PlotMetric::Throughput, PlotMetric::FlowDelay, PlotMetric::FlowThroughput}) {
    write_text(dir / plot_file_name(m), plot_csv(res.aggregates, m));
  }

  summary << "\nscheduler  load  delay  throughput  flow_delay  flow_throughput\n";
  for (const auto& a : res.aggregates) {
    summary << to_string(a.scheduler) << "  " << fmt(a.load) << "  " << fmt(a.avg_delay_mean) << "  "
            << fmt(a.throughput_mean) << "  " << fmt(a.flow_delay_mean) << "  " << fmt(a.flow_throughput_mean)
            << (a.failures ? "  (" + std::to_string(a.failures) + " failed)" : std::string()) << "\n";
  }
  const auto find = [&](SchedulerKind k, double load) -> const SweepAggregate* {
    for (const auto& a : res.aggregates) {
      if (a.scheduler == k && a.load == load) return &a;
    }
    return nullptr;
  };
  if (std::find(c.schedulers.begin(), c.schedulers.end(), SchedulerKind::Oracle) != c.schedulers.end()) {
    summary << "\nheuristic/oracle gap (focus flow)\nload  delay_gap_pct  throughput_gap_pct\n";
    for (double load : c.loads) {
      const auto* h = find(SchedulerKind::Mpmh, load);
      const auto* o = find(SchedulerKind::Oracle, load);
      if (!h || !o || o->flow_delay_mean <= 0 || o->flow_throughput_mean <= 0) continue;
      summary << fmt(load) << "  " << fmt(100.0 * (h->flow_delay_mean - o->flow_delay_mean) / o->flow_delay_mean)
              << "  " << fmt(100.0 * (o->flow_throughput_mean - h->flow_throughput_mean) / o->flow_throughput_mean)
              << "\n";
    }
  }
  int status = 0;
  for (const auto& cell : res.cells) {
    if (cell.report) continue;
    status = 1;
    summary << "FAILED " << to_string(cell.scheduler) << " load " << fmt(cell.load) << " seed " << cell.seed
            << ": " << cell.error << "\n";
  }
  if (status != 0) summary << "artifacts are partial: failed cells are missing from runs.csv\n";
  return status;
}

}  // namespace

CommandResult run_command(const CommandOptions& opt, std::ostream& log) {
  const Config c = resolve(opt);
  const Instance inst = instantiate(c.scenario);
  const SimScenario& sc = inst.sim;

  const std::string fp = fingerprint(opt, c);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(fp)));
  CommandResult result;
  result.out_dir = output_root(opt) / ((c.scenario.name.empty() ? "scenario" : c.scenario.name) + "-" + hash);
  std::filesystem::create_directories(result.out_dir);
  write_text(result.out_dir / "resolved_scenario.yaml", to_yaml(c.scenario));

  std::ostringstream summary;
  summary << "scenario: " << c.scenario.name << "\ncommand: " << opt.command
          << (opt.validate_only ? " (validate only)" : "") << "\n";
  if (c.scenario.generated) summary << "topology draws rejected: " << inst.redraws << "\n";
  summary << describe_topology(sc);

  if (c.scenario.is_static()) {
    result.exit_code = run_static(opt, c, sc, result.out_dir, summary, log);
  } else {
    result.exit_code = run_traffic(opt, c, sc, result.out_dir, summary, log);
  }
  result.summary = summary.str();
  write_text(result.out_dir / "summary.txt", result.summary);
  log << "wrote " << result.out_dir.string() << "\n";
  return result;
}

}  // namespace mpmh::app
