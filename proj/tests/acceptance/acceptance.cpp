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


// Acceptance suite: one PASS/FAIL line per criterion, CSV artifacts under the
// directory given as argv[1]. Exit status is 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "mpmh/baseline.hpp"
#include "mpmh/milp/formulation.hpp"
#include "mpmh/milp/solver.hpp"
#include "mpmh/scenario.hpp"
#include "mpmh/schedule.hpp"
#include "mpmh/scheme.hpp"
#include "mpmh/sim.hpp"
#include "mpmh/traffic.hpp"
#include "oracles.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace mpmh;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

fs::path g_out;

// ---------------------------------------------------------------------------
// 1. Worked example

Outcome worked_example() {
  Outcome o;
  const SimScenario sc = instantiate(*builtin_scenario("fig1b")).sim;
  const Topology& t = sc.topology;
  const Flow flow{0, *t.find("A"), *t.find("B"), 18, 1.0};
  const std::vector<Flow> flows{flow};
  const std::vector<int> forced{0};

  Stopwatch hw;
  const MpmhPlan plan = plan_mpmh(flows, t, sc.radio, sc.mpmh, forced);
  const double h_sec = hw.seconds();
  if (plan.path_sets.size() != 1) {
    o.check(false, "expected one path set");
    return o;
  }
  const auto split = distribute_traffic(plan.path_sets[0].paths, 18);
  o.check(split == std::vector<std::int64_t>{3, 9, 6},
          "split " + std::to_string(split.size() > 0 ? split[0] : -1) + "," +
              std::to_string(split.size() > 1 ? split[1] : -1) + "," +
              std::to_string(split.size() > 2 ? split[2] : -1) + " (want 3,9,6)");

  // Reference pairing list: (duration, links).
  using LinkSet = std::set<std::pair<std::string, std::string>>;
  const std::vector<std::pair<std::int64_t, LinkSet>> want{
      {1, {{"A", "D"}}},
      {3, {{"A", "C"}, {"D", "F"}}},
      {3, {{"A", "B"}, {"C", "E"}}},
      {1, {{"F", "B"}}},
      {2, {{"E", "B"}}},
  };
  bool same = plan.schedule.size() == static_cast<int>(want.size());
  for (int k = 0; same && k < plan.schedule.size(); ++k) {
    const Pairing& pr = plan.schedule.pairings[static_cast<std::size_t>(k)];
    LinkSet got;
    for (const HopRef& r : pr.hops) {
      const Link l = plan.problem.hop(r.path, r.hop).link;
      got.insert({t.name(l.from), t.name(l.to)});
    }
    same = pr.delta == want[static_cast<std::size_t>(k)].first && got == want[static_cast<std::size_t>(k)].second;
  }
  o.check(same && plan.schedule.total_slots() == 10,
          "heuristic " + std::to_string(plan.schedule.size()) + " pairings, " +
              std::to_string(plan.schedule.total_slots()) + " slots, link-for-link match: " + (same ? "yes" : "no"));
  o.check(validate_schedule(plan.problem, plan.schedule, t, sc.radio).empty(), "heuristic schedule valid");
  o.check(h_sec < 1.0, "heuristic time " + num(h_sec, 4) + " s (< 1 s)");

  Stopwatch ow;
  const auto exact = milp::solve_schedule(plan.problem, t, sc.radio, {}, 0, &plan.schedule);
  const auto joint = milp::split_search(plan.path_sets, t, sc.radio, 5, 1, milp::SplitMode::Joint);
  const double o_sec = ow.seconds();
  o.check(exact.status == milp::SolveStatus::Optimal && exact.slots == 9,
          "exact (fixed split) " + std::to_string(exact.slots) + " slots, " + milp::to_string(exact.status));
  o.check(joint.status == milp::SolveStatus::Optimal && joint.slots == 9,
          "exact (joint split) " + std::to_string(joint.slots) + " slots");
  o.check(o_sec < 60.0, "oracle time " + num(o_sec, 3) + " s (< 60 s)");

  const BaselinePlan base = plan_baseline(flows, t, sc.radio, BaselineKind::Fdmac);
  o.check(base.schedule.total_slots() == 18, "FDMAC " + std::to_string(base.schedule.total_slots()) + " slots");

  const auto fx = oracle::fig1b();
  bool fixture = true;
  for (NodeId a = 0; a < t.size(); ++a) {
    for (NodeId b = 0; b < t.size(); ++b) {
      if (a != b && t.rate({a, b}) != fx.topology.rate({a, b})) fixture = false;
    }
  }
  o.check(fixture, "built-in scenario matches the hand-built fixture");
  return o;
}

// ---------------------------------------------------------------------------
// 2. Schedule validity

Outcome validity() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(20261014);
  int checked = 0, violations = 0, disagreements = 0, errors = 0;
  std::string first;
  for (int trial = 0; trial < 1000; ++trial) {
    oracle::InstanceOptions opt;
    opt.sector_beam = trial % 2 == 1;
    const oracle::RandomInstance r = oracle::random_instance(rng, opt);
    MpmhParams params;
    params.h_max = r.h_max;
    auto check = [&](const ScheduleProblem& p, const Schedule& s, const char* who) {
      ++checked;
      const auto v = validate_schedule(p, s, r.topology, r.radio);
      std::string why;
      const bool ok = oracle::schedule_ok(p, s, r.topology, r.radio, &why);
      if (!v.empty() || !ok) {
        ++violations;
        if (first.empty()) first = std::string(who) + " trial " + std::to_string(trial) + ": " + (v.empty() ? why : v[0]);
      }
      if (v.empty() != ok) ++disagreements;
    };
    try {
      const MpmhPlan plan = plan_mpmh(r.flows, r.topology, r.radio, params, r.forced);
      check(plan.problem, plan.schedule, "mpmh");
      for (BaselineKind k : {BaselineKind::Fdmac, BaselineKind::FdmacUr}) {
        const BaselinePlan b = plan_baseline(r.flows, r.topology, r.radio, k);
        check(b.direct.problem, b.schedule, k == BaselineKind::Fdmac ? "fdmac" : "fdmac-ur");
      }
    } catch (const std::exception& e) {
      ++errors;
      if (first.empty()) first = "trial " + std::to_string(trial) + ": " + e.what();
    }
  }
  const double sec = sw.seconds();
  o.check(violations == 0 && errors == 0,
          std::to_string(checked) + " schedules over 1000 instances, " + std::to_string(violations) +
              " violations, " + std::to_string(errors) + " errors" + (first.empty() ? "" : " (" + first + ")"));
  o.check(disagreements == 0, "library and reference checkers agree on every schedule");
  o.check(sec < 120.0, "time " + num(sec) + " s (< 120 s)");
  return o;
}

// ---------------------------------------------------------------------------
// 3. Oracle equivalence

Outcome oracle_equivalence() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(77);
  int mismatch = 0, below = 0, solved = 0;
  double gap_sum = 0;
  std::ofstream csv(g_out / "c3_oracle_equivalence.csv");
  csv << "instance,hops,K,branch_and_bound,enumeration,brute_force,heuristic\n";
  for (int i = 0; i < 200; ++i) {
    const oracle::TinyInstance ti = oracle::tiny_instance(rng, 6);
    const int K = std::min(6, ti.problem.total_hops());
    const auto& topo = ti.instance.topology;
    const auto& radio = ti.instance.radio;
    const auto bb = milp::solve_schedule(ti.problem, topo, radio, {}, K, &ti.heuristic);
    const auto en = milp::enumerate_exact(ti.problem, topo, radio, K);
    const auto bf = oracle::brute_force_slots(ti.problem, topo, radio, K);
    const std::int64_t h = ti.heuristic.total_slots();
    const bool ok = bb.status == milp::SolveStatus::Optimal && en && bf && bb.slots == en->slots &&
                    en->slots == *bf;
    if (!ok) ++mismatch;
    if (bf && h < *bf) ++below;
    if (ok) {
      ++solved;
      gap_sum += static_cast<double>(h - *bf) / static_cast<double>(*bf);
    }
    csv << i << ',' << ti.problem.total_hops() << ',' << K << ',' << bb.slots << ','
        << (en ? std::to_string(en->slots) : "") << ',' << (bf ? std::to_string(*bf) : "") << ',' << h << '\n';
  }
  const double sec = sw.seconds();
  o.check(mismatch == 0, "branch-and-bound = enumeration = brute force on " + std::to_string(200 - mismatch) +
                             "/200 instances");
  o.check(below == 0, "heuristic >= optimum on all instances (" + std::to_string(below) + " below)");
  o.note("mean heuristic gap " + num(100.0 * gap_sum / std::max(1, solved)) + "%");
  o.check(sec < 600.0, "time " + num(sec) + " s (< 600 s)");
  return o;
}

// ---------------------------------------------------------------------------
// 4. Linearization soundness

Outcome rlt_soundness() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(4242);
  int instances = 0, draws = 0;
  std::int64_t points = 0, feasible = 0, bad_lift = 0, bad_objective = 0, false_accept = 0;
  while (instances < 50 && draws < 100000) {
    ++draws;
    const oracle::TinyInstance ti = oracle::tiny_instance(rng, 4);
    const int H = ti.problem.total_hops();
    const milp::P1Instance p1 = milp::build_p1(ti.problem, ti.instance.topology, ti.instance.radio, H);
    if (p1.layout.d_tilde > 4) continue;
    ++instances;
    const milp::P2Instance p2 = milp::linearize_rlt(p1);
    const milp::Layout& L = p1.layout;
    const int K = L.K;
    const auto D = static_cast<int>(L.d_tilde);
    std::vector<double> x(static_cast<std::size_t>(p1.model.variable_count()), 0.0);
    for (std::size_t p = 0; p < L.d.size(); ++p) {
      x[static_cast<std::size_t>(L.d[p])] = static_cast<double>(L.problem.paths[p].demand);
    }
    // Every P1 point puts each hop in exactly one pairing, so enumerating
    // hop -> pairing labels and all pairing lengths covers the feasible set.
    std::vector<int> label(static_cast<std::size_t>(H), 0);
    std::int64_t inst_feasible = 0;
    while (true) {
      for (int k = 0; k < K; ++k) {
        for (int h = 0; h < H; ++h) {
          x[static_cast<std::size_t>(L.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)])] =
              label[static_cast<std::size_t>(h)] == k ? 1.0 : 0.0;
        }
      }
      std::vector<int> len(static_cast<std::size_t>(K), 0);
      while (true) {
        for (int k = 0; k < K; ++k) {
          x[static_cast<std::size_t>(L.delta[static_cast<std::size_t>(k)])] = len[static_cast<std::size_t>(k)];
        }
        ++points;
        const bool f1 = p1.model.feasible(x);
        const auto y = milp::lift_point(p2, x);
        const bool f2 = p2.model.feasible(y);
        if (f1) {
          ++feasible;
          ++inst_feasible;
          if (!f2) ++bad_lift;
          if (std::abs(p1.model.objective_value(x) - p2.model.objective_value(y)) > 1e-9) ++bad_objective;
        } else if (f2) {
          ++false_accept;
        }
        std::size_t k = 0;
        while (k < len.size() && ++len[k] > D) len[k++] = 0;
        if (k == len.size()) break;
      }
      std::size_t h = 0;
      while (h < label.size() && ++label[h] == K) label[h++] = 0;
      if (h == label.size()) break;
    }
    if (inst_feasible == 0) o.check(false, "instance " + std::to_string(instances) + " has no feasible point");
  }
  const double sec = sw.seconds();
  o.check(instances == 50, std::to_string(instances) + " micro-instances (<= 4 hops, delta <= 4)");
  o.check(bad_lift == 0 && bad_objective == 0,
          std::to_string(feasible) + " feasible integer points, " + std::to_string(bad_lift) +
              " infeasible after linearization, " + std::to_string(bad_objective) + " objective mismatches");
  o.check(false_accept == 0, std::to_string(points - feasible) + " infeasible points stay infeasible (" +
                                 std::to_string(false_accept) + " accepted)");
  o.note("time " + num(sec) + " s");
  return o;
}

// ---------------------------------------------------------------------------
// Sweep helpers

const SweepAggregate* find(const std::vector<SweepAggregate>& aggs, SchedulerKind k, double load) {
  for (const auto& a : aggs) {
    if (a.scheduler == k && a.load == load) return &a;
  }
  return nullptr;
}

void write_sweep(const fs::path& dir, const SweepResult& res) {
  fs::create_directories(dir);
  app::write_text(dir / "runs.csv", app::runs_csv(res.cells));
  app::write_text(dir / "aggregate.csv", app::aggregate_csv(res.aggregates));
  for (auto m : {app::PlotMetric::AvgDelay, app::PlotMetric::Throughput, app::PlotMetric::FlowDelay,
                 app::PlotMetric::FlowThroughput}) {
    app::write_text(dir / app::plot_file_name(m), app::plot_csv(res.aggregates, m));
  }
}

int failures(const SweepResult& res) {
  int n = 0;
  for (const auto& c : res.cells) n += c.report ? 0 : 1;
  return n;
}

std::vector<std::uint64_t> seeds_1_to(int n) {
  std::vector<std::uint64_t> s;
  for (int i = 1; i <= n; ++i) s.push_back(static_cast<std::uint64_t>(i));
  return s;
}

// ---------------------------------------------------------------------------
// 5. Near-optimality

Outcome near_optimality() {
  Outcome o;
  Stopwatch sw;
  const Scenario s = *builtin_scenario("single");
  const SimScenario sc = instantiate(s).sim;
  const std::vector<double> loads{1, 2, 3, 4, 5};
  const std::vector<SchedulerKind> ks{SchedulerKind::Mpmh, SchedulerKind::Oracle};
  const SweepResult res = sweep(sc, loads, ks, seeds_1_to(10));
  write_sweep(g_out / "c5_single", res);
  o.check(failures(res) == 0, std::to_string(res.cells.size()) + " runs, " + std::to_string(failures(res)) + " failed");
  for (double load : loads) {
    const auto* h = find(res.aggregates, SchedulerKind::Mpmh, load);
    const auto* x = find(res.aggregates, SchedulerKind::Oracle, load);
    if (h == nullptr || x == nullptr) continue;
    const double dgap = 100.0 * (h->flow_delay_mean - x->flow_delay_mean) / x->flow_delay_mean;
    const double tgap = 100.0 * (x->flow_throughput_mean - h->flow_throughput_mean) / x->flow_throughput_mean;
    const std::string line = "load " + num(load, 0) + ": flow delay gap " + num(dgap) + "%, flow throughput gap " +
                             num(tgap) + "% (heuristic " + num(h->flow_throughput_mean, 0) + " vs oracle " +
                             num(x->flow_throughput_mean, 0) + ")";
    if (load == loads.back()) {
      o.check(dgap <= 12.0 && tgap <= 10.0, line + " [limits 12%, 10%]");
    } else {
      o.note(line);
    }
  }
  o.check(sw.seconds() < 900.0, "time " + num(sw.seconds()) + " s (< 900 s)");
  return o;
}

// ---------------------------------------------------------------------------
// 6. Protocol comparison

// First load whose mean throughput reaches 95% of the scheduler's maximum.
double saturation_load(const std::vector<SweepAggregate>& aggs, SchedulerKind k, const std::vector<double>& loads) {
  double best = 0;
  for (double l : loads) best = std::max(best, find(aggs, k, l)->throughput_mean);
  for (double l : loads) {
    if (find(aggs, k, l)->throughput_mean >= 0.95 * best) return l;
  }
  return loads.back();
}

Outcome protocol_comparison() {
  Outcome o;
  Stopwatch sw;
  const std::vector<double> loads{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<SchedulerKind> ks{SchedulerKind::Mpmh, SchedulerKind::Fdmac, SchedulerKind::FdmacUr};
  for (const bool ipp : {false, true}) {
    SimScenario sc = instantiate(*builtin_scenario("wpan10")).sim;
    if (ipp) sc.traffic.mode = IppMode{};
    const std::string mode = ipp ? "ipp" : "poisson";
    const SweepResult res = sweep(sc, loads, ks, seeds_1_to(10));
    write_sweep(g_out / ("c6_" + mode), res);
    const auto& A = res.aggregates;
    o.check(failures(res) == 0, mode + ": " + std::to_string(res.cells.size()) + " runs, " +
                                    std::to_string(failures(res)) + " failed");

    double gain = 0;
    for (double l = 5; l <= 10; ++l) {
      gain += find(A, SchedulerKind::Mpmh, l)->throughput_mean / find(A, SchedulerKind::Fdmac, l)->throughput_mean - 1;
    }
    gain = 100.0 * gain / 6.0;
    o.check(gain >= 30.0, mode + " (a): mean throughput gain over FDMAC at loads 5-10 = " + num(gain) + "% (>= 30%)");

    std::string worse;
    for (double l = 4; l <= 10; ++l) {
      const double m = find(A, SchedulerKind::Mpmh, l)->avg_delay_mean;
      const double f = find(A, SchedulerKind::Fdmac, l)->avg_delay_mean;
      if (m > f) worse += " " + num(l, 0) + " (" + num(m, 0) + " vs " + num(f, 0) + ")";
    }
    o.check(worse.empty(), mode + " (b): MPMH delay <= FDMAC at every load >= 4" +
                               (worse.empty() ? std::string() : "; exceeded at loads" + worse));

    const double sat_f = saturation_load(A, SchedulerKind::Fdmac, loads);
    const double sat_u = saturation_load(A, SchedulerKind::FdmacUr, loads);
    o.check(sat_u < sat_f, mode + " (c): saturation load FDMAC-UR " + num(sat_u, 0) + " < FDMAC " + num(sat_f, 0));
  }
  o.check(sw.seconds() < 1800.0, "time " + num(sw.seconds()) + " s (< 1800 s)");
  return o;
}

// ---------------------------------------------------------------------------
// 7. Hop limit study

Outcome hop_limit() {
  Outcome o;
  const std::vector<double> loads{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<SchedulerKind> ks{SchedulerKind::Mpmh};
  std::map<int, std::vector<SweepAggregate>> by_h;
  for (int h : {2, 3, 4}) {
    SimScenario sc = instantiate(*builtin_scenario("wpan10")).sim;
    sc.mpmh.h_max = h;
    const SweepResult res = sweep(sc, loads, ks, seeds_1_to(10));
    if (failures(res) != 0) o.check(false, "H_max " + std::to_string(h) + ": failed runs");
    by_h[h] = res.aggregates;
  }
  std::ofstream csv(g_out / "c7_hmax.csv");
  csv << "load,delay_h2,delay_h3,delay_h4,throughput_h2,throughput_h3,throughput_h4,"
         "flow_delay_h2,flow_delay_h3,flow_delay_h4,flow_throughput_h2,flow_throughput_h3,flow_throughput_h4\n";
  std::string below;
  for (double l : loads) {
    csv << app::fmt(l);
    for (auto field : {&SweepAggregate::avg_delay_mean, &SweepAggregate::throughput_mean,
                       &SweepAggregate::flow_delay_mean, &SweepAggregate::flow_throughput_mean}) {
      for (int h : {2, 3, 4}) csv << ',' << app::fmt(find(by_h[h], SchedulerKind::Mpmh, l)->*field);
    }
    csv << '\n';
    const double t2 = find(by_h[2], SchedulerKind::Mpmh, l)->throughput_mean;
    const double t3 = find(by_h[3], SchedulerKind::Mpmh, l)->throughput_mean;
    const double t4 = find(by_h[4], SchedulerKind::Mpmh, l)->throughput_mean;
    o.note("load " + num(l, 0) + ": throughput H2 " + num(t2, 0) + ", H3 " + num(t3, 0) + ", H4 " + num(t4, 0));
    if (l >= 6 && t3 < t2) below += " " + num(l, 0);
  }
  o.check(below.empty(), "H_max 3 throughput >= H_max 2 at every load >= 6" +
                             (below.empty() ? std::string() : "; below at" + below));
  return o;
}

// ---------------------------------------------------------------------------
// 8. Traffic generators

struct GapStats {
  double mean = 0;
  double scv = 0;
};

GapStats sample(const TrafficMode& mode, double rate, std::uint32_t seed, int n) {
  std::seed_seq seq{seed, 0x61636365u};
  ArrivalSampler s(mode, rate, seq);
  double prev = 0, sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double t = s.next();
    const double g = t - prev;
    prev = t;
    sum += g;
    sq += g * g;
  }
  GapStats st;
  st.mean = sum / n;
  st.scv = (sq / n - st.mean * st.mean) / (st.mean * st.mean);
  return st;
}

Outcome traffic_generators() {
  Outcome o;
  constexpr int kSamples = 1'000'000;
  std::uint32_t seed = 1;
  for (double rate : {0.125, 0.625, 2.0}) {
    const GapStats p = sample(PoissonMode{}, rate, seed++, kSamples);
    const double err = std::abs(p.mean * rate - 1.0);
    o.check(err <= 0.01, "poisson rate " + num(rate, 3) + ": mean gap " + num(p.mean, 4) + " vs " +
                             num(1.0 / rate, 4) + " (error " + num(100 * err) + "%), scv " + num(p.scv, 3));
  }
  for (const IppMode shape : {IppMode{4.0, 0.5}, IppMode{10.0, 0.3}, IppMode{2.0, 0.8}}) {
    const double rate = 0.125;
    const IppDerived d = ipp_params(ipp_for_rate(rate, shape.ratio, shape.p1));
    const GapStats g = sample(shape, rate, seed++, kSamples);
    const double err = std::abs(g.mean / d.mean_interarrival - 1.0);
    o.check(err <= 0.01 && g.scv > 1.0, "ipp ratio " + num(shape.ratio, 1) + " p1 " + num(shape.p1, 1) +
                                            ": mean gap " + num(g.mean, 4) + " vs E[X] " +
                                            num(d.mean_interarrival, 4) + " (error " + num(100 * err) +
                                            "%), scv " + num(g.scv, 3) + " (> 1)");
  }
  return o;
}

// ---------------------------------------------------------------------------
// 9. Determinism

std::map<std::string, std::string> files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return out;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = g_out / "c9";
  fs::remove_all(root);
  struct Cmd {
    std::string command, scenario;
    bool oracle;
  };
  for (const Cmd& c : {Cmd{"run", "fig1b", true}, Cmd{"sweep", "wpan10", false}, Cmd{"sweep", "single", false}}) {
    std::map<std::string, std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      app::CommandOptions opt;
      opt.command = c.command;
      opt.scenario = c.scenario;
      opt.oracle = c.oracle;
      if (c.command == "sweep") {
        opt.seeds = {1, 2, 3};
        opt.workers = rep + 1;
      }
      opt.out_root = root / (c.command + "_" + c.scenario) / std::to_string(rep);
      std::ostringstream log;
      const auto r = app::run_command(opt, log);
      auto snap = files(r.out_dir);
      if (rep == 0) {
        first = std::move(snap);
        continue;
      }
      int csvs = 0;
      for (const auto& [name, body] : first) csvs += name.ends_with(".csv") ? 1 : 0;
      o.check(snap == first && csvs > 0, c.command + " " + c.scenario + ": " + std::to_string(first.size()) +
                                             " artifacts (" + std::to_string(csvs) + " CSV) byte-identical");
    }
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  g_out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance-out");
  fs::create_directories(g_out);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked example", worked_example},
      {"schedule validity", validity},
      {"oracle equivalence", oracle_equivalence},
      {"linearization soundness", rlt_soundness},
      {"near-optimality", near_optimality},
      {"protocol comparison", protocol_comparison},
      {"hop limit study", hop_limit},
      {"traffic generators", traffic_generators},
      {"determinism", determinism},
  };
  std::ofstream summary(g_out / "acceptance.csv");
  summary << "criterion,name,result,seconds\n";
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Stopwatch sw;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double sec = sw.seconds();
    for (const auto& n : out.notes) std::cout << "    " << n << "\n";
    std::cout << (out.pass ? "PASS" : "FAIL") << " #" << i + 1 << " " << criteria[i].first << " (" << num(sec) << " s)\n"
              << std::flush;
    summary << i + 1 << ',' << criteria[i].first << ',' << (out.pass ? "PASS" : "FAIL") << ',' << num(sec, 3) << '\n';
    if (!out.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
