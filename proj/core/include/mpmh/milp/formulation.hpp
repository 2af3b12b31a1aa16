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

#ifndef MPMH_MILP_FORMULATION_HPP_
#define MPMH_MILP_FORMULATION_HPP_

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mpmh/milp/model.hpp"
#include "mpmh/network.hpp"
#include "mpmh/radio.hpp"
#include "mpmh/schedule.hpp"

namespace mpmh::milp {

// Variable layout shared by P1 and its linearization.
//   a[k][h]   hop h in pairing k (binary)
//   delta[k]  pairing length, integer in [0, d_tilde]
//   d[p]      packets on path p, integer
// Hops are numbered path-major over `problem.paths`.
struct Layout {
  ScheduleProblem problem;
  int K = 0;
  bool joint_split = false;
  std::vector<HopRef> hops;
  std::vector<std::vector<int>> a;
  std::vector<int> delta;
  std::vector<int> d;
  std::int64_t d_tilde = 0;
  int hop_index(int path, int hop) const;
};

struct P1Instance {
  Model model;
  Layout layout;
};

// Objective: sum of delta. Rows: each hop in exactly one pairing; per-pairing
// demand coverage (bilinear delta*a); per-flow split conservation; at most one
// hop of a path per pairing; adjacent hops never share a pairing; path order
// by prefix sums; SINR rows (bilinear a*a) when the beam policy admits
// interference. K must be at least the longest path's hop count.
// Fixed split: d pinned to each path's demand.
P1Instance build_p1(const ScheduleProblem& problem, const Topology& topology,
                    const RadioModel& radio, int K);
// Joint split: every path of every set is included and d is free subject to
// per-flow conservation (demand = sum of the set's split).
P1Instance build_p1_joint(std::span<const PathSet> path_sets, const Topology& topology,
                          const RadioModel& radio, int K);

using ProductMap = std::map<std::pair<int, int>, int>;  // (x, y), x <= y -> w

// Replaces every bilinear product x*y by a fresh variable w and the four
// bound-factor rows built from the bounds of x and y. Linear rows and the
// objective are copied unchanged; products are shared across rows.
Model linearize(const Model& model, ProductMap& products);

struct P2Instance {
  Model model;
  Layout layout;
  ProductMap products;
  std::vector<std::vector<int>> s;  // s[k][h] = delta[k] * a[k][h]
};
P2Instance linearize_rlt(const P1Instance& p1);

// P1 point -> P2 point, products evaluated exactly.
std::vector<double> lift_point(const P2Instance& p2, std::span<const double> p1_point);

// Point of a schedule with at most K pairings; unused pairings are empty.
std::vector<double> point_from_schedule(const P1Instance& p1, const Schedule& schedule,
                                        std::span<const std::int64_t> split = {});

// `problem` carries the decoded split: zero-split paths are dropped and
// `schedule` indexes the remaining ones.
struct DecodedSolution {
  ScheduleProblem problem;
  Schedule schedule;                // non-empty pairings in index order
  std::vector<std::int64_t> split;  // per layout path
};
DecodedSolution decode(const Layout& layout, std::span<const double> x);

}  // namespace mpmh::milp

#endif  // MPMH_MILP_FORMULATION_HPP_
