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


#include <gtest/gtest.h>

#include <random>

#include "mpmh/baseline.hpp"
#include "mpmh/error.hpp"
#include "oracles.hpp"

namespace mpmh {
namespace {

using oracle::fig1b;

// Straight re-statement of the greedy coloring: repeatedly open a pairing
// and sweep flows in (demand desc, id asc) order.
std::int64_t reference_fdmac_slots(const ScheduleProblem& p, const Topology& t, const RadioModel& radio) {
  std::vector<int> order(p.paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = p.paths[static_cast<std::size_t>(a)];
    const auto& y = p.paths[static_cast<std::size_t>(b)];
    return x.demand != y.demand ? x.demand > y.demand : x.flow_id < y.flow_id;
  });
  std::vector<bool> done(p.paths.size());
  std::size_t left = p.paths.size();
  std::int64_t total = 0;
  while (left > 0) {
    std::vector<ActiveLink> on;
    std::int64_t delta = 0;
    for (int i : order) {
      if (done[static_cast<std::size_t>(i)] || static_cast<int>(on.size()) >= p.node_count / 2) continue;
      const HopTask& h = p.hop(i, 0);
      bool ok = std::none_of(on.begin(), on.end(), [&](const ActiveLink& a) { return adjacent(a.link, h.link); });
      if (ok) {
        on.push_back({h.link, h.rate});
        ok = pairing_feasible(radio, on, t.positions());
        if (!ok) on.pop_back();
      }
      if (!ok) continue;
      done[static_cast<std::size_t>(i)] = true;
      --left;
      delta = std::max(delta, h.weight);
    }
    if (on.empty()) return -1;
    total += delta;
  }
  return total;
}

TEST(DirectProblem, WeightsAndBlockedFlows) {
  const auto f = fig1b();
  const std::vector<Flow> flows{{0, f.A, f.B, 18, 1}, {1, f.A, f.E, 4, 1}, {2, f.D, f.F, 0, 1}, {3, f.C, f.E, 7, 1}};
  const auto d = direct_problem(flows, f.topology, f.radio, BaselineKind::Fdmac);
  ASSERT_EQ(d.problem.paths.size(), 2u);
  EXPECT_EQ(d.unschedulable, std::vector<int>{1});
  EXPECT_EQ(d.problem.hop(0, 0).weight, 18);
  EXPECT_EQ(d.problem.hop(1, 0).weight, 3);

  const auto ur = direct_problem(flows, f.topology, f.radio, BaselineKind::FdmacUr);
  EXPECT_EQ(ur.problem.hop(0, 0).weight, 36);
  EXPECT_EQ(ur.problem.hop(1, 0).weight, 14);
  EXPECT_EQ(ur.problem.hop(1, 0).rate, f.radio.lowest_rate());
  EXPECT_DOUBLE_EQ(ur.problem.hop(1, 0).pkts_per_slot, kUniformPktsPerSlot);
}

TEST(Fdmac, Fig1bDirectEighteenSlots) {
  const auto f = fig1b();
  const std::vector<Flow> flows{f.flow};
  const auto plan = plan_baseline(flows, f.topology, f.radio, BaselineKind::Fdmac);
  EXPECT_EQ(plan.schedule.total_slots(), 18);
  EXPECT_TRUE(oracle::schedule_ok(plan.direct.problem, plan.schedule, f.topology, f.radio));
}

TEST(Fdmac, NonAdjacentShareLongestWeight) {
  const auto f = fig1b();
  // A->C at rate 6 with 30 packets (w 5), F->B at rate 6 with 18 (w 3).
  const std::vector<Flow> flows{{0, f.A, f.C, 30, 1}, {1, f.F, f.B, 18, 1}};
  const auto plan = plan_baseline(flows, f.topology, f.radio, BaselineKind::Fdmac);
  ASSERT_EQ(plan.schedule.size(), 1);
  EXPECT_EQ(plan.schedule.pairings[0].delta, 5);
}

TEST(Fdmac, AdjacentFlowsSerialize) {
  const auto f = fig1b();
  const std::vector<Flow> flows{{0, f.A, f.C, 30, 1}, {1, f.A, f.D, 18, 1}, {2, f.C, f.E, 3, 1}};
  const auto plan = plan_baseline(flows, f.topology, f.radio, BaselineKind::Fdmac);
  EXPECT_EQ(plan.schedule.size(), 2);
  EXPECT_EQ(plan.schedule.total_slots(), 5 + 3);
}

TEST(Fdmac, RejectsMultiHop) {
  const auto f = fig1b();
  ScheduleProblem p;
  p.node_count = 6;
  p.paths.push_back({0, 0, 1, {{{f.A, f.C}, 6, 6.0, 1}, {{f.C, f.E}, 3, 3.0, 1}}});
  EXPECT_THROW(schedule_fdmac(p, f.topology, f.radio), ScheduleError);
}

// Random instances: valid, matches the reference greedy, UR equals FDMAC run
// on the uniform-rate copy of the problem, and UR never beats FDMAC.
TEST(Fdmac, RandomInstances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    oracle::InstanceOptions o;
    o.sector_beam = trial % 4 == 0;
    const auto inst = oracle::random_instance(rng, o);
    const auto fd = plan_baseline(inst.flows, inst.topology, inst.radio, BaselineKind::Fdmac);
    const auto ur = plan_baseline(inst.flows, inst.topology, inst.radio, BaselineKind::FdmacUr);
    std::string why;
    ASSERT_TRUE(oracle::schedule_ok(fd.direct.problem, fd.schedule, inst.topology, inst.radio, &why)) << why;
    ASSERT_TRUE(oracle::schedule_ok(ur.direct.problem, ur.schedule, inst.topology, inst.radio, &why)) << why;
    ASSERT_EQ(fd.schedule.total_slots(), reference_fdmac_slots(fd.direct.problem, inst.topology, inst.radio));

    ScheduleProblem uniform = fd.direct.problem;
    for (auto& task : uniform.paths) {
      HopTask& h = task.hops[0];
      h.rate = inst.radio.lowest_rate();
      h.pkts_per_slot = kUniformPktsPerSlot;
      h.weight = hop_weight(task.demand, h.pkts_per_slot);
    }
    ASSERT_EQ(schedule_fdmac(uniform, inst.topology, inst.radio), ur.schedule);
    if (!o.sector_beam) ASSERT_GE(ur.schedule.total_slots(), fd.schedule.total_slots());
  }
}

}  // namespace
}  // namespace mpmh
