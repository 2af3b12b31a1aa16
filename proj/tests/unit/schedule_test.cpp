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

#include "mpmh/error.hpp"
#include "mpmh/schedule.hpp"
#include "mpmh/scheme.hpp"
#include "oracles.hpp"

namespace mpmh {
namespace {

using oracle::fig1b;
using oracle::schedule_ok;

MpmhPlan fig1b_plan() {
  const auto f = fig1b();
  MpmhParams params;
  const std::vector<int> forced{0};
  const std::vector<Flow> flows{f.flow};
  return plan_mpmh(flows, f.topology, f.radio, params, forced);
}

TEST(HopWeight, CeilingOfDemandOverRate) {
  EXPECT_EQ(hop_weight(0, 3), 0);
  EXPECT_EQ(hop_weight(-4, 3), 0);
  EXPECT_EQ(hop_weight(1, 3), 1);
  EXPECT_EQ(hop_weight(9, 3), 3);
  EXPECT_EQ(hop_weight(10, 3), 4);
  EXPECT_EQ(hop_weight(3, 0.5), 6);
  EXPECT_EQ(hop_weight(7, 2.5), 3);
  EXPECT_THROW(hop_weight(1, 0.0), DomainError);
}

TEST(HopWeight, SmallestCoveringDuration) {
  for (std::int64_t d = 1; d <= 200; ++d) {
    for (double r : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 1.5}) {
      const std::int64_t w = hop_weight(d, r);
      EXPECT_GE(static_cast<double>(w) * r + 1e-9, static_cast<double>(d));
      EXPECT_LT(static_cast<double>(w - 1) * r, static_cast<double>(d));
    }
  }
}

TEST(Validator, AcceptsFig1bSchedule) {
  const auto f = fig1b();
  const MpmhPlan plan = fig1b_plan();
  EXPECT_TRUE(validate_schedule(plan.problem, plan.schedule, f.topology, f.radio).empty());
  std::string why;
  EXPECT_TRUE(schedule_ok(plan.problem, plan.schedule, f.topology, f.radio, &why)) << why;
  EXPECT_NO_THROW(require_valid_schedule(plan.problem, plan.schedule, f.topology, f.radio));
}

TEST(Validator, CatchesEachViolation) {
  const auto f = fig1b();
  const MpmhPlan plan = fig1b_plan();
  const auto& P = plan.problem;
  auto rejected = [&](const Schedule& s) {
    const bool lib = !validate_schedule(P, s, f.topology, f.radio).empty();
    const bool ref = !schedule_ok(P, s, f.topology, f.radio);
    EXPECT_EQ(lib, ref);
    return lib && ref;
  };

  Schedule s = plan.schedule;
  s.pairings.front().delta -= 1;
  EXPECT_TRUE(rejected(s)) << "short pairing";

  s = plan.schedule;
  s.pairings.erase(s.pairings.begin());
  EXPECT_TRUE(rejected(s)) << "missing hop";

  s = plan.schedule;
  s.pairings.push_back(s.pairings.front());
  EXPECT_TRUE(rejected(s)) << "duplicate hop";

  s = plan.schedule;
  std::reverse(s.pairings.begin(), s.pairings.end());
  EXPECT_TRUE(rejected(s)) << "reversed order";

  // Merge two pairings that share node A.
  s = plan.schedule;
  Pairing merged = s.pairings[0];
  for (const HopRef& r : s.pairings[1].hops) merged.hops.push_back(r);
  merged.delta = std::max(s.pairings[0].delta, s.pairings[1].delta);
  s.pairings.erase(s.pairings.begin(), s.pairings.begin() + 2);
  s.pairings.insert(s.pairings.begin(), merged);
  EXPECT_TRUE(rejected(s)) << "adjacent links";

  s = plan.schedule;
  s.pairings[0].hops.push_back({99, 0});
  EXPECT_FALSE(validate_schedule(P, s, f.topology, f.radio).empty());
}

TEST(Validator, MatchingSizeLimit) {
  // Four nodes allow two links per pairing; three disjoint links need six.
  Topology t({{"A", {0, 0}, true}, {"B", {1, 0}, false}, {"C", {0, 5}, false}, {"D", {1, 5}, false}},
             {1});
  t.set_rate({0, 1}, 1);
  t.set_rate({2, 3}, 1);
  ScheduleProblem p;
  p.node_count = 4;
  p.paths.push_back({0, 0, 1, {{{0, 1}, 1, 1.0, 1}}});
  p.paths.push_back({1, 0, 1, {{{2, 3}, 1, 1.0, 1}}});
  Schedule s{{{{{0, 0}, {1, 0}}, 1}}};
  EXPECT_TRUE(validate_schedule(p, s, t, RadioModel{}).empty());
  p.node_count = 3;
  EXPECT_FALSE(validate_schedule(p, s, t, RadioModel{}).empty());
  EXPECT_FALSE(schedule_ok(p, s, t, RadioModel{}));
}

TEST(ToText, OneLinePerPairing) {
  const auto f = fig1b();
  const MpmhPlan plan = fig1b_plan();
  const std::string text = to_text(plan.problem, plan.schedule, f.topology);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), plan.schedule.size());
  EXPECT_EQ(text.substr(0, text.find('\n')), "1 A->D@2");
}

TEST(CapSchedule, KeepsWholePairings) {
  Schedule s{{{{{0, 0}}, 4}, {{{1, 0}}, 3}, {{{2, 0}}, 5}}};
  auto c = cap_schedule(s, 100);
  EXPECT_FALSE(c.clipped);
  EXPECT_EQ(c.schedule, s);
  c = cap_schedule(s, 7);
  EXPECT_TRUE(c.clipped);
  EXPECT_EQ(c.schedule.size(), 2);
  EXPECT_EQ(c.schedule.total_slots(), 7);
  c = cap_schedule(s, 9);
  EXPECT_TRUE(c.clipped);
  EXPECT_EQ(c.schedule.total_slots(), 7);
  c = cap_schedule(s, 2);
  EXPECT_TRUE(c.clipped);
  ASSERT_EQ(c.schedule.size(), 1);
  EXPECT_EQ(c.schedule.pairings[0].delta, 2);
  EXPECT_EQ(c.schedule.pairings[0].hops, s.pairings[0].hops);
}

TEST(CapSchedule, NeverExceedsCap) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    Schedule s;
    const int k = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < k; ++i) s.pairings.push_back({{{i, 0}}, 1 + static_cast<std::int64_t>(rng() % 50)});
    const std::int64_t cap = 1 + static_cast<std::int64_t>(rng() % 200);
    const auto c = cap_schedule(s, cap);
    EXPECT_LE(c.schedule.total_slots(), cap);
    EXPECT_EQ(c.clipped, s.total_slots() > cap);
    EXPECT_GE(c.schedule.size(), 1);
    for (int i = 0; i + 1 < c.schedule.size(); ++i) EXPECT_EQ(c.schedule.pairings[static_cast<std::size_t>(i)], s.pairings[static_cast<std::size_t>(i)]);
  }
}

// Random single-hop mutations of heuristic schedules: library validator and
// reference checker must agree on every one.
TEST(Validator, AgreesWithReferenceUnderMutation) {
  std::mt19937_64 rng(99);
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    oracle::InstanceOptions o;
    o.sector_beam = trial % 3 == 0;
    auto inst = oracle::random_instance(rng, o);
    MpmhParams params;
    params.h_max = inst.h_max;
    const MpmhPlan plan = plan_mpmh(inst.flows, inst.topology, inst.radio, params, inst.forced);
    if (plan.schedule.size() < 2) continue;
    Schedule s = plan.schedule;
    auto& a = s.pairings[rng() % s.pairings.size()];
    switch (rng() % 3) {
      case 0:
        a.delta = std::max<std::int64_t>(0, a.delta - 1);
        break;
      case 1: {
        auto& b = s.pairings[rng() % s.pairings.size()];
        if (&a != &b && !b.hops.empty()) {
          a.hops.push_back(b.hops.back());
          b.hops.pop_back();
          if (b.hops.empty()) std::erase_if(s.pairings, [](const Pairing& p) { return p.hops.empty(); });
        }
        break;
      }
      default:
        std::swap(s.pairings.front(), s.pairings.back());
    }
    const bool lib = validate_schedule(plan.problem, s, inst.topology, inst.radio).empty();
    const bool ref = schedule_ok(plan.problem, s, inst.topology, inst.radio);
    ASSERT_EQ(lib, ref) << "trial " << trial;
    rejected += lib ? 0 : 1;
  }
  EXPECT_GT(rejected, 50);
}

}  // namespace
}  // namespace mpmh
