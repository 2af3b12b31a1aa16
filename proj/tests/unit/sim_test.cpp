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

#include <gtest/gtest.h>

#include <random>

#include "mpmh/error.hpp"
#include "mpmh/scenario.hpp"
#include "oracles.hpp"

namespace mpmh {
namespace {

SimScenario fig1b_sim(std::int64_t packets) {
  SimScenario sc = instantiate(*builtin_scenario("fig1b")).sim;
  sc.sim.initial_packets_max = 0;
  sc.sim.length_slots = 200;
  sc.replay = {ArrivalStream(static_cast<std::size_t>(packets), 0.0)};
  return sc;
}

SimScenario wpan10(double load, std::int64_t length) {
  SimScenario sc = instantiate(*builtin_scenario("wpan10")).sim;
  sc.traffic.load = load;
  sc.sim.length_slots = length;
  return sc;
}

MpmhPlan fig1b_plan() {
  const auto fx = oracle::fig1b();
  const std::vector<Flow> flows{fx.flow};
  const std::vector<int> forced{0};
  return plan_mpmh(flows, fx.topology, fx.radio, MpmhParams{}, forced);
}

void expect_conserved(const MetricsReport& r) {
  std::int64_t delivered = 0;
  for (std::size_t v = 0; v < r.flows.size(); ++v) {
    const FlowStats& f = r.flows[v];
    EXPECT_EQ(f.arrivals, f.delivered + f.dropped + f.queued) << "flow " << v;
    EXPECT_GE(f.delivered, 0);
    EXPECT_GE(f.dropped, 0);
    EXPECT_GE(f.queued, 0);
    delivered += f.delivered;
  }
  EXPECT_EQ(r.throughput, delivered);
}

TEST(Names, RoundTrip) {
  for (auto k : {SchedulerKind::Mpmh, SchedulerKind::Fdmac, SchedulerKind::FdmacUr, SchedulerKind::Oracle}) {
    EXPECT_EQ(parse_scheduler(to_string(k)), k);
  }
  for (auto a : {Admission::Truncate, Admission::Proportional, Admission::Fair}) {
    EXPECT_EQ(parse_admission(to_string(a)), a);
  }
  EXPECT_THROW(parse_scheduler("tdma"), ConfigError);
  EXPECT_THROW(parse_admission("drop"), ConfigError);
}

TEST(Params, Validation) {
  SimParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.overhead(), 4);
  p.length_slots = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = SimParams{};
  p.ema_alpha = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(AccountFrame, Fig1bDeliversEverythingByTheLastSlot) {
  const MpmhPlan plan = fig1b_plan();
  ASSERT_EQ(plan.schedule.total_slots(), 10);
  PathQueues q(plan.problem.paths.size());
  for (std::size_t p = 0; p < q.size(); ++p) {
    q[p].resize(plan.problem.paths[p].hops.size());
    for (std::int64_t n = 0; n < plan.problem.paths[p].demand; ++n) q[p][0].push_back(0);
  }
  const FrameOutcome out = account_frame(plan.problem, plan.schedule, q, 100, false);
  ASSERT_EQ(out.delivered.size(), 18u);
  std::int64_t last = 0;
  for (const Delivery& d : out.delivered) {
    EXPECT_GT(d.slot, 100);
    last = std::max(last, d.slot);
  }
  EXPECT_EQ(last, 110);
  for (const auto& path : out.leftover) {
    for (const auto& hop : path) EXPECT_TRUE(hop.empty());
  }
}

TEST(AccountFrame, RefusesOutOfOrderSchedules) {
  const MpmhPlan plan = fig1b_plan();
  PathQueues q(plan.problem.paths.size());
  for (std::size_t p = 0; p < q.size(); ++p) {
    q[p].resize(plan.problem.paths[p].hops.size());
    for (std::int64_t n = 0; n < plan.problem.paths[p].demand; ++n) q[p][0].push_back(0);
  }
  Schedule reversed = plan.schedule;
  std::reverse(reversed.pairings.begin(), reversed.pairings.end());
  EXPECT_THROW(account_frame(plan.problem, reversed, q, 0, false), AccountingError);
  Schedule shortened = plan.schedule;
  for (auto& pr : shortened.pairings) pr.delta = std::max<std::int64_t>(1, pr.delta - 1);
  EXPECT_THROW(account_frame(plan.problem, shortened, q, 0, false), AccountingError);
  EXPECT_NO_THROW(account_frame(plan.problem, shortened, q, 0, true));
}

TEST(AccountFrame, ClippedFrameKeepsPacketsAtTheirHop) {
  const MpmhPlan plan = fig1b_plan();
  PathQueues q(plan.problem.paths.size());
  std::int64_t total = 0;
  for (std::size_t p = 0; p < q.size(); ++p) {
    q[p].resize(plan.problem.paths[p].hops.size());
    for (std::int64_t n = 0; n < plan.problem.paths[p].demand; ++n) q[p][0].push_back(n);
    total += plan.problem.paths[p].demand;
  }
  const CappedSchedule c = cap_schedule(plan.schedule, 5);
  ASSERT_TRUE(c.clipped);
  const FrameOutcome out = account_frame(plan.problem, c.schedule, q, 0, true);
  std::int64_t left = 0;
  bool parked_midway = false;
  for (const auto& path : out.leftover) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      left += static_cast<std::int64_t>(path[i].size());
      if (i > 0 && !path[i].empty()) parked_midway = true;
      EXPECT_TRUE(std::is_sorted(path[i].begin(), path[i].end()));
    }
  }
  EXPECT_EQ(static_cast<std::int64_t>(out.delivered.size()) + left, total);
  EXPECT_TRUE(parked_midway);
}

TEST(Run, Fig1bBurstIsDeliveredInOneFrame) {
  for (auto k : {SchedulerKind::Mpmh, SchedulerKind::Fdmac, SchedulerKind::Oracle}) {
    const MetricsReport r = run_with_arrivals(fig1b_sim(18), k, fig1b_sim(18).replay, {true});
    EXPECT_EQ(r.throughput, 18) << to_string(k);
    ASSERT_TRUE(r.avg_delay.has_value());
    expect_conserved(r);
  }
  const MetricsReport h = run(fig1b_sim(18), SchedulerKind::Mpmh, 1, {true});
  const MetricsReport f = run(fig1b_sim(18), SchedulerKind::Fdmac, 1, {true});
  const MetricsReport o = run(fig1b_sim(18), SchedulerKind::Oracle, 1, {true});
  // One frame: poll, schedule and push overhead, then the schedule itself.
  EXPECT_EQ(h.frame_slots.front(), 4 + 10);
  EXPECT_EQ(f.frame_slots.front(), 4 + 18);
  EXPECT_EQ(o.frame_slots.front(), 4 + 9);
  EXPECT_LT(*o.avg_delay, *h.avg_delay);
  EXPECT_LT(*h.avg_delay, *f.avg_delay);
}

TEST(Run, NoArrivalsMeansNoDelays) {
  SimScenario sc = fig1b_sim(0);
  sc.replay = {ArrivalStream{}};
  const MetricsReport r = run(sc, SchedulerKind::Mpmh, 1);
  EXPECT_EQ(r.throughput, 0);
  EXPECT_FALSE(r.avg_delay.has_value());
  EXPECT_FALSE(r.flow_delay.has_value());
  EXPECT_GT(r.frames, 0);
  for (auto s : r.frame_slots) EXPECT_EQ(s, sc.sim.overhead());
}

class RandomRuns : public ::testing::TestWithParam<SchedulerKind> {};

TEST_P(RandomRuns, ConservationAndFrameBound) {
  for (double load : {0.5, 4.0, 9.0}) {
    SimScenario sc = wpan10(load, 6000);
    for (std::uint64_t seed : {1u, 2u}) {
      const MetricsReport r = run(sc, GetParam(), seed, {true});
      expect_conserved(r);
      const std::int64_t bound = sc.mpmh.frame_slot_cap + sc.sim.overhead();
      for (auto s : r.frame_slots) {
        EXPECT_LE(s, bound);
        EXPECT_GE(s, sc.sim.overhead());
      }
      EXPECT_EQ(static_cast<std::int64_t>(r.frame_slots.size()), r.frames);
      if (r.avg_delay) {
        EXPECT_GT(*r.avg_delay, 0);
        EXPECT_LE(*r.avg_delay, static_cast<double>(sc.sim.delay_threshold + bound));
      }
    }
  }
}

TEST_P(RandomRuns, Deterministic) {
  const SimScenario sc = wpan10(3, 4000);
  const MetricsReport a = run(sc, GetParam(), 5);
  const MetricsReport b = run(sc, GetParam(), 5);
  EXPECT_EQ(a.throughput, b.throughput);
  EXPECT_EQ(a.frame_slots, b.frame_slots);
  EXPECT_EQ(a.avg_delay, b.avg_delay);
}

INSTANTIATE_TEST_SUITE_P(Baselines, RandomRuns,
                         ::testing::Values(SchedulerKind::Mpmh, SchedulerKind::Fdmac, SchedulerKind::FdmacUr),
                         [](const auto& info) {
                           std::string s = to_string(info.param);
                           std::erase(s, '-');
                           return s;
                         });

TEST(Run, LowerThresholdNeverDeliversMore) {
  SimScenario sc = wpan10(8, 8000);
  std::int64_t prev_drop = -1;
  std::int64_t prev_thr = -1;
  for (std::int64_t th : {8000, 2000, 500}) {
    sc.sim.delay_threshold = th;
    const MetricsReport r = run(sc, SchedulerKind::Fdmac, 3);
    std::int64_t dropped = 0;
    for (const auto& f : r.flows) dropped += f.dropped;
    if (prev_drop >= 0) {
      EXPECT_GE(dropped, prev_drop) << "threshold " << th;
      EXPECT_LE(r.throughput, prev_thr + prev_thr / 20) << "threshold " << th;
    }
    if (r.avg_delay) EXPECT_LE(*r.avg_delay, static_cast<double>(th + sc.mpmh.frame_slot_cap + 4));
    prev_drop = dropped;
    prev_thr = r.throughput;
  }
}

TEST(Run, RelaysHoldPacketsOnlyUnderClipping) {
  SimScenario light = wpan10(0.3, 6000);
  const MetricsReport r = run(light, SchedulerKind::Mpmh, 2);
  EXPECT_EQ(r.clipped_frames, 0);
  EXPECT_EQ(r.relayed_at_end, 0);
  for (Admission a : {Admission::Truncate, Admission::Proportional, Admission::Fair}) {
    SimScenario heavy = wpan10(9, 6000);
    heavy.sim.admission = a;
    const MetricsReport h = run(heavy, SchedulerKind::Mpmh, 2, {true});
    expect_conserved(h);
    std::int64_t queued = 0;
    for (const auto& f : h.flows) queued += f.queued;
    EXPECT_LE(h.relayed_at_end, queued) << to_string(a);
  }
}

TEST(Run, ProportionalAdmissionBeatsTruncationUnderOverload) {
  SimScenario sc = wpan10(8, 10000);
  sc.sim.admission = Admission::Truncate;
  const MetricsReport t = run(sc, SchedulerKind::Mpmh, 1);
  sc.sim.admission = Admission::Proportional;
  const MetricsReport p = run(sc, SchedulerKind::Mpmh, 1);
  EXPECT_GT(p.throughput, t.throughput);
  EXPECT_GT(p.admission_rounds, 0);
}

TEST(Sweep, CellsAndAggregatesLineUp) {
  const SimScenario sc = wpan10(1, 2000);
  const std::vector<double> loads{1, 2};
  const std::vector<SchedulerKind> ks{SchedulerKind::Mpmh, SchedulerKind::Fdmac};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const SweepResult one = sweep(sc, loads, ks, seeds, 1);
  const SweepResult two = sweep(sc, loads, ks, seeds, 2);
  ASSERT_EQ(one.cells.size(), 12u);
  ASSERT_EQ(one.aggregates.size(), 4u);
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    ASSERT_TRUE(one.cells[i].report.has_value());
    EXPECT_EQ(one.cells[i].report->throughput, two.cells[i].report->throughput);
  }
  const SweepAggregate& a = one.aggregates.front();
  EXPECT_EQ(a.runs, 3);
  EXPECT_EQ(a.failures, 0);
  double mean = 0;
  for (int i = 0; i < 3; ++i) mean += static_cast<double>(one.cells[static_cast<std::size_t>(i)].report->throughput);
  EXPECT_NEAR(a.throughput_mean, mean / 3, 1e-9);
}

}  // namespace
}  // namespace mpmh
