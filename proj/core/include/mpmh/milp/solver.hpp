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

#ifndef MPMH_MILP_SOLVER_HPP_
#define MPMH_MILP_SOLVER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpmh/milp/formulation.hpp"
#include "mpmh/milp/model.hpp"
#include "mpmh/milp/simplex.hpp"

namespace mpmh::milp {

enum class SolveStatus { Optimal, Infeasible, Timeout };

std::string to_string(SolveStatus s);

struct SolveOptions {
  double time_limit_s = 60.0;
  std::int64_t node_limit = 50'000'000;
  // Known feasible point; its objective seeds the incumbent.
  std::vector<double> incumbent;
  SimplexOptions lp;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  bool has_solution = false;
  double objective = 0;
  std::vector<double> values;
  std::int64_t nodes = 0;
  std::int64_t lp_solves = 0;
  double seconds = 0;
};

// Problem-specific acceleration for branch_and_bound. All members optional.
struct BranchHooks {
  std::vector<int> priority;  // per variable; lower classes are branched first
  // True when every completion of the node is dominated.
  std::function<bool(std::span<const double> lb, std::span<const double> ub)> prune;
  // Valid lower bound on the node's objective, checked before the LP.
  std::function<double(std::span<const double> lb, std::span<const double> ub)> bound;
  bool integral_objective = false;
  bool up_first = true;  // explore x >= ceil before x <= floor
};

// Activity-based bound tightening on the node bounds; integer bounds are
// rounded. Returns false when the node is infeasible.
bool propagate(const Model& model, std::vector<double>& lb, std::vector<double>& ub,
               int max_passes = 20);

// LP relaxation under the given bounds after fixed columns and redundant rows
// are removed. `x` is returned in the full variable space.
LpResult solve_relaxation(const Model& model, std::span<const double> lb,
                          std::span<const double> ub, const SimplexOptions& options = {});

// Depth-first branch-and-bound over the integer variables of a linear model:
// most fractional variable of the lowest priority class, ties by index.
MilpSolution branch_and_bound(const Model& model, const BranchHooks& hooks,
                              const SolveOptions& options);

// Branch-and-bound on P2 with dominance (empty pairings last) and a
// fixed-weight bound.
MilpSolution solve_exact(const P2Instance& p2, const SolveOptions& options = {});

struct ExactSchedule {
  SolveStatus status = SolveStatus::Infeasible;
  DecodedSolution solution;
  std::int64_t slots = 0;
  std::int64_t nodes = 0;
};

// Fixed split. K = 0 means the total hop count. `incumbent` (for example the
// heuristic schedule) seeds the search when it fits into K pairings.
ExactSchedule solve_schedule(const ScheduleProblem& problem, const Topology& topology,
                             const RadioModel& radio, const SolveOptions& options = {}, int K = 0,
                             const Schedule* incumbent = nullptr);

// Exhaustive search over hop-to-pairing partitions for a fixed split. Pairing
// lengths are the largest member weights and pairings are ordered along the
// path-precedence DAG. Returns nullopt when no schedule exists within K.
struct EnumerationResult {
  Schedule schedule;
  std::int64_t slots = 0;
  std::int64_t leaves = 0;
};
std::optional<EnumerationResult> enumerate_exact(const ScheduleProblem& problem,
                                                 const Topology& topology, const RadioModel& radio,
                                                 int K = 0);

enum class SplitMode { Joint, Enumerated };
std::string to_string(SplitMode m);

struct SplitSearchResult {
  SplitMode mode = SplitMode::Enumerated;
  std::vector<std::vector<std::int64_t>> splits;  // per path set
  ScheduleProblem problem;
  Schedule schedule;
  std::int64_t slots = 0;
  std::int64_t candidates = 0;
  SolveStatus status = SolveStatus::Optimal;
};

// Enumerated: every split whose parts are multiples of `granularity` (the
// last path takes the remainder), each residual instance solved exactly.
// Ties prefer the split closest (L1) to the proportional one, then the
// lexicographically smallest. Joint: d is a decision variable inside P2.
SplitSearchResult split_search(std::span<const PathSet> path_sets, const Topology& topology,
                               const RadioModel& radio, int K, std::int64_t granularity,
                               SplitMode mode = SplitMode::Enumerated,
                               const SolveOptions& options = {});

}  // namespace mpmh::milp

#endif  // MPMH_MILP_SOLVER_HPP_
