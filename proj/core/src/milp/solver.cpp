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

#include "mpmh/milp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "mpmh/error.hpp"
#include "mpmh/scheme.hpp"

namespace mpmh::milp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

std::string to_string(SplitMode m) { return m == SplitMode::Joint ? "joint" : "enumerated"; }

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kIntTol = 1e-6;

struct Activity {
  double min = 0;
  double max = 0;
  int min_inf = 0;
  int max_inf = 0;
};

Activity activity(const Constraint& c, std::span<const double> lb, std::span<const double> ub) {
  Activity a;
  for (const auto& t : c.linear) {
    if (t.coef == 0) continue;
    const double l = lb[static_cast<std::size_t>(t.var)];
    const double u = ub[static_cast<std::size_t>(t.var)];
    const double lo = t.coef > 0 ? l : u;
    const double hi = t.coef > 0 ? u : l;
    if (std::isinf(lo)) {
      ++a.min_inf;
    } else {
      a.min += t.coef * lo;
    }
    if (std::isinf(hi)) {
      ++a.max_inf;
    } else {
      a.max += t.coef * hi;
    }
  }
  return a;
}

bool fixed(double l, double u) { return u - l <= kFeasTol; }

}  // namespace

bool propagate(const Model& model, std::vector<double>& lb, std::vector<double>& ub,
               int max_passes) {
  const auto& vars = model.variables();
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (const auto& row : model.constraints()) {
      const Activity act = activity(row, lb, ub);
      const double tol = 1e-7 * std::max(1.0, std::abs(row.rhs));
      const bool le = row.sense != Sense::Ge;
      const bool ge = row.sense != Sense::Le;
      if (le && act.min_inf == 0 && act.min > row.rhs + tol) return false;
      if (ge && act.max_inf == 0 && act.max < row.rhs - tol) return false;

      for (const auto& t : row.linear) {
        const auto j = static_cast<std::size_t>(t.var);
        if (t.coef == 0 || fixed(lb[j], ub[j])) continue;
        double new_lb = lb[j];
        double new_ub = ub[j];
        // sum <= rhs: a_j x_j <= rhs - (min activity of the rest)
        if (le) {
          const double own = t.coef > 0 ? lb[j] : ub[j];
          if (!std::isinf(own) && act.min_inf == 0) {
            const double rest = act.min - t.coef * own;
            const double bound = (row.rhs - rest) / t.coef;
            if (t.coef > 0) {
              new_ub = std::min(new_ub, bound);
            } else {
              new_lb = std::max(new_lb, bound);
            }
          }
        }
        if (ge) {
          const double own = t.coef > 0 ? ub[j] : lb[j];
          if (!std::isinf(own) && act.max_inf == 0) {
            const double rest = act.max - t.coef * own;
            const double bound = (row.rhs - rest) / t.coef;
            if (t.coef > 0) {
              new_lb = std::max(new_lb, bound);
            } else {
              new_ub = std::min(new_ub, bound);
            }
          }
        }
        if (vars[j].integer) {
          new_lb = std::ceil(new_lb - kIntTol);
          new_ub = std::floor(new_ub + kIntTol);
        }
        if (new_lb > new_ub + 1e-7) return false;
        if (new_lb > new_ub) new_lb = new_ub;  // within tolerance
        // Only meaningful tightenings count as progress.
        const double span = std::isinf(ub[j]) ? 1.0 : std::max(1.0, ub[j] - lb[j]);
        if (new_lb > lb[j] + 1e-6 * span) {
          lb[j] = new_lb;
          changed = true;
        }
        if (new_ub < ub[j] - 1e-6 * span) {
          ub[j] = new_ub;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return true;
}

LpResult solve_relaxation(const Model& model, std::span<const double> lb,
                          std::span<const double> ub, const SimplexOptions& options) {
  const int n = model.variable_count();
  std::vector<int> col(static_cast<std::size_t>(n), -1);
  LpProblem lp;
  std::vector<double> cost_full(static_cast<std::size_t>(n), 0.0);
  for (const auto& t : model.objective()) cost_full[static_cast<std::size_t>(t.var)] += t.coef;
  double obj_offset = 0;
  for (int j = 0; j < n; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    if (fixed(lb[sj], ub[sj])) {
      obj_offset += cost_full[sj] * lb[sj];
      continue;
    }
    col[sj] = static_cast<int>(lp.cost.size());
    lp.cost.push_back(cost_full[sj]);
    lp.lb.push_back(lb[sj]);
    lp.ub.push_back(ub[sj]);
  }
  for (const auto& row : model.constraints()) {
    const Activity act = activity(row, lb, ub);
    const double tol = 1e-9 * std::max(1.0, std::abs(row.rhs));
    const bool le_redundant = act.max_inf == 0 && act.max <= row.rhs + tol;
    const bool ge_redundant = act.min_inf == 0 && act.min >= row.rhs - tol;
    if (row.sense == Sense::Le && le_redundant) continue;
    if (row.sense == Sense::Ge && ge_redundant) continue;
    if (row.sense == Sense::Eq && le_redundant && ge_redundant) continue;
    LpRow r;
    r.sense = row.sense;
    r.rhs = row.rhs;
    for (const auto& t : row.linear) {
      const auto sj = static_cast<std::size_t>(t.var);
      if (col[sj] < 0) {
        r.rhs -= t.coef * lb[sj];
      } else {
        r.terms.push_back({col[sj], t.coef});
      }
    }
    if (r.terms.empty()) {
      const bool ok = (row.sense != Sense::Le || 0 <= r.rhs + 1e-7) &&
                      (row.sense != Sense::Ge || 0 >= r.rhs - 1e-7) &&
                      (row.sense != Sense::Eq || std::abs(r.rhs) <= 1e-7);
      if (!ok) return LpResult{LpStatus::Infeasible, 0, {}, 0};
      continue;
    }
    lp.rows.push_back(std::move(r));
  }

  LpResult res;
  if (lp.cost.empty()) {
    res.status = LpStatus::Optimal;
  } else {
    res = solve_lp(lp, options);
    if (res.status != LpStatus::Optimal) return res;
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    x[sj] = col[sj] < 0 ? lb[sj] : res.x[static_cast<std::size_t>(col[sj])];
  }
  res.x = std::move(x);
  res.objective += obj_offset;
  return res;
}

namespace {

struct Node {
  std::vector<double> lb;
  std::vector<double> ub;
};

bool prunable(double bound, double incumbent, bool integral) {
  if (std::isinf(incumbent)) return false;
  if (integral) return std::ceil(bound - kIntTol) >= incumbent - 0.5;
  return bound >= incumbent - 1e-9;
}

}  // namespace

MilpSolution branch_and_bound(const Model& model, const BranchHooks& hooks,
                              const SolveOptions& options) {
  if (!model.is_linear()) throw ConfigError("branch_and_bound: model must be linear");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const auto& vars = model.variables();
  const int n = model.variable_count();

  MilpSolution sol;
  double best = kInf;
  if (!options.incumbent.empty()) {
    if (!model.feasible(options.incumbent, 1e-6)) {
      throw ConfigError("branch_and_bound: supplied incumbent is infeasible");
    }
    best = model.objective_value(options.incumbent);
    sol.values = options.incumbent;
    sol.has_solution = true;
    sol.objective = best;
  }

  std::vector<Node> stack;
  {
    Node root;
    for (const auto& v : vars) {
      root.lb.push_back(v.lb);
      root.ub.push_back(v.ub);
    }
    stack.push_back(std::move(root));
  }

  bool timed_out = false;
  while (!stack.empty()) {
    if (sol.nodes >= options.node_limit || elapsed() > options.time_limit_s) {
      timed_out = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++sol.nodes;

    if (!propagate(model, node.lb, node.ub)) continue;
    if (hooks.prune && hooks.prune(node.lb, node.ub)) continue;
    if (hooks.bound && prunable(hooks.bound(node.lb, node.ub), best, hooks.integral_objective)) {
      continue;
    }

    ++sol.lp_solves;
    const LpResult lp = solve_relaxation(model, node.lb, node.ub, options.lp);
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status != LpStatus::Optimal) {
      throw ScheduleError("branch_and_bound: LP relaxation failed (status " +
                          std::to_string(static_cast<int>(lp.status)) + ")");
    }
    if (prunable(lp.objective, best, hooks.integral_objective)) continue;

    int branch = -1;
    int branch_class = 0;
    double branch_frac = 0;
    for (int j = 0; j < n; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (!vars[sj].integer) continue;
      const double x = lp.x[sj];
      const double f = std::min(x - std::floor(x), std::ceil(x) - x);
      if (f <= kIntTol) continue;
      const int cls = hooks.priority.empty() ? 0 : hooks.priority[sj];
      if (branch < 0 || cls < branch_class || (cls == branch_class && f > branch_frac + 1e-12)) {
        branch = j;
        branch_class = cls;
        branch_frac = f;
      }
    }

    if (branch < 0) {
      std::vector<double> x = lp.x;
      for (int j = 0; j < n; ++j) {
        if (vars[static_cast<std::size_t>(j)].integer) x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
      }
      if (!model.feasible(x, 1e-6)) x = lp.x;  // keep the LP point if rounding drifts
      const double obj = model.objective_value(x);
      if (obj < best - 1e-9) {
        best = obj;
        sol.values = std::move(x);
        sol.objective = obj;
        sol.has_solution = true;
      }
      continue;
    }

    const auto sb = static_cast<std::size_t>(branch);
    Node down = node;
    down.ub[sb] = std::floor(lp.x[sb]);
    Node up = std::move(node);
    up.lb[sb] = std::ceil(lp.x[sb]);
    const bool up_first = hooks.up_first && branch_class == 0;
    if (up_first) {
      stack.push_back(std::move(down));
      stack.push_back(std::move(up));
    } else {
      stack.push_back(std::move(up));
      stack.push_back(std::move(down));
    }
  }

  sol.seconds = elapsed();
  if (timed_out) {
    sol.status = SolveStatus::Timeout;
  } else {
    sol.status = sol.has_solution ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  if (sol.has_solution && hooks.integral_objective) sol.objective = std::round(sol.objective);
  return sol;
}

MilpSolution solve_exact(const P2Instance& p2, const SolveOptions& options) {
  const Layout& L = p2.layout;
  BranchHooks hooks;
  hooks.integral_objective = true;
  hooks.priority.assign(static_cast<std::size_t>(p2.model.variable_count()), 1);
  for (const auto& row : L.a) {
    for (int j : row) hooks.priority[static_cast<std::size_t>(j)] = 0;
  }
  const std::size_t H = L.hops.size();

  // Removing an empty pairing keeps every constraint and cannot raise the
  // objective, so only nodes with empty pairings at the end need exploring.
  hooks.prune = [&L, H](std::span<const double> lb, std::span<const double> ub) {
    bool seen_empty = false;
    for (int k = 0; k < L.K; ++k) {
      const auto& ak = L.a[static_cast<std::size_t>(k)];
      bool empty = true;
      bool used = false;
      for (std::size_t h = 0; h < H; ++h) {
        const auto j = static_cast<std::size_t>(ak[h]);
        if (ub[j] > 0.5) empty = false;
        if (lb[j] > 0.5) used = true;
      }
      if (used && seen_empty) return true;
      if (empty) seen_empty = true;
    }
    return false;
  };
  hooks.bound = [&L, H](std::span<const double> lb, std::span<const double>) {
    double total = 0;
    for (int k = 0; k < L.K; ++k) {
      double longest = lb[static_cast<std::size_t>(L.delta[static_cast<std::size_t>(k)])];
      for (std::size_t h = 0; h < H; ++h) {
        if (lb[static_cast<std::size_t>(L.a[static_cast<std::size_t>(k)][h])] < 0.5) continue;
        const auto& ref = L.hops[h];
        const double d = lb[static_cast<std::size_t>(L.d[static_cast<std::size_t>(ref.path)])];
        const double rate = L.problem.hop(ref.path, ref.hop).pkts_per_slot;
        longest = std::max(longest, std::ceil(d / rate - kIntTol));
      }
      total += longest;
    }
    return total;
  };
  return branch_and_bound(p2.model, hooks, options);
}

ExactSchedule solve_schedule(const ScheduleProblem& problem, const Topology& topology,
                             const RadioModel& radio, const SolveOptions& options, int K,
                             const Schedule* incumbent) {
  ExactSchedule out;
  if (problem.paths.empty()) {
    out.status = SolveStatus::Optimal;
    out.solution.problem = problem;
    return out;
  }
  if (K <= 0) K = problem.total_hops();
  const P1Instance p1 = build_p1(problem, topology, radio, K);
  const P2Instance p2 = linearize_rlt(p1);
  SolveOptions opts = options;
  if (incumbent != nullptr && incumbent->size() <= K) {
    opts.incumbent = lift_point(p2, point_from_schedule(p1, *incumbent));
  }
  const MilpSolution sol = solve_exact(p2, opts);
  out.status = sol.status;
  out.nodes = sol.nodes;
  if (sol.has_solution) {
    out.solution = decode(p2.layout, sol.values);
    out.slots = out.solution.schedule.total_slots();
  }
  return out;
}

namespace {

// Set-partition search state for enumerate_exact.
class PartitionSearch {
 public:
  PartitionSearch(const ScheduleProblem& problem, const Topology& topology,
                  const RadioModel& radio, int K)
      : problem_(problem), topology_(topology), radio_(radio), K_(K) {
    for (int p = 0; p < static_cast<int>(problem.paths.size()); ++p) {
      for (int i = 0; i < static_cast<int>(problem.paths[static_cast<std::size_t>(p)].hops.size()); ++i) {
        order_.push_back({p, i});
      }
    }
    // Heavy hops first so block lengths settle early and the bound bites.
    std::stable_sort(order_.begin(), order_.end(), [&](const HopRef& a, const HopRef& b) {
      return problem_.hop(a.path, a.hop).weight > problem_.hop(b.path, b.hop).weight;
    });
    block_of_.assign(problem.paths.size(), {});
    for (std::size_t p = 0; p < problem.paths.size(); ++p) {
      block_of_[p].assign(problem.paths[p].hops.size(), -1);
    }
  }

  std::optional<EnumerationResult> run() {
    place(0, 0);
    if (!found_) return std::nullopt;
    EnumerationResult r;
    r.schedule = best_;
    r.slots = best_slots_;
    r.leaves = leaves_;
    return r;
  }

 private:
  struct Block {
    std::vector<HopRef> hops;
    std::int64_t delta = 0;
  };

  bool compatible(const Block& b, const HopRef& ref) const {
    const HopTask& h = problem_.hop(ref.path, ref.hop);
    std::vector<ActiveLink> active;
    for (const HopRef& r : b.hops) {
      if (r.path == ref.path) return false;
      const HopTask& o = problem_.hop(r.path, r.hop);
      if (adjacent(o.link, h.link)) return false;
      active.push_back({o.link, o.rate});
    }
    if (static_cast<int>(b.hops.size()) + 1 > problem_.node_count / 2) return false;
    active.push_back({h.link, h.rate});
    return pairing_feasible(radio_, active, topology_.positions());
  }

  // Kahn order on the block precedence DAG, lowest block index first.
  std::optional<std::vector<int>> block_order() const {
    const std::size_t B = blocks_.size();
    std::vector<std::vector<int>> succ(B);
    std::vector<int> indeg(B, 0);
    for (std::size_t p = 0; p < block_of_.size(); ++p) {
      for (std::size_t i = 0; i + 1 < block_of_[p].size(); ++i) {
        const int u = block_of_[p][i];
        const int v = block_of_[p][i + 1];
        succ[static_cast<std::size_t>(u)].push_back(v);
        ++indeg[static_cast<std::size_t>(v)];
      }
    }
    std::vector<int> out;
    std::vector<bool> done(B, false);
    for (std::size_t step = 0; step < B; ++step) {
      int pick = -1;
      for (std::size_t b = 0; b < B; ++b) {
        if (!done[b] && indeg[b] == 0) {
          pick = static_cast<int>(b);
          break;
        }
      }
      if (pick < 0) return std::nullopt;
      done[static_cast<std::size_t>(pick)] = true;
      out.push_back(pick);
      for (int v : succ[static_cast<std::size_t>(pick)]) --indeg[static_cast<std::size_t>(v)];
    }
    return out;
  }

  void place(std::size_t idx, std::int64_t slots) {
    if (found_ && slots >= best_slots_) return;
    if (idx == order_.size()) {
      ++leaves_;
      const auto order = block_order();
      if (!order) return;
      Schedule s;
      for (int b : *order) {
        Pairing pr{blocks_[static_cast<std::size_t>(b)].hops, blocks_[static_cast<std::size_t>(b)].delta};
        std::sort(pr.hops.begin(), pr.hops.end());
        s.pairings.push_back(std::move(pr));
      }
      best_ = std::move(s);
      best_slots_ = slots;
      found_ = true;
      return;
    }
    const HopRef ref = order_[idx];
    const std::int64_t w = problem_.hop(ref.path, ref.hop).weight;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (!compatible(blocks_[b], ref)) continue;
      const std::int64_t old = blocks_[b].delta;
      blocks_[b].hops.push_back(ref);
      blocks_[b].delta = std::max(old, w);
      block_of_[static_cast<std::size_t>(ref.path)][static_cast<std::size_t>(ref.hop)] = static_cast<int>(b);
      place(idx + 1, slots - old + blocks_[b].delta);
      blocks_[b].hops.pop_back();
      blocks_[b].delta = old;
    }
    if (static_cast<int>(blocks_.size()) < K_) {
      std::vector<ActiveLink> alone{{problem_.hop(ref.path, ref.hop).link, problem_.hop(ref.path, ref.hop).rate}};
      if (pairing_feasible(radio_, alone, topology_.positions())) {
        blocks_.push_back({{ref}, w});
        block_of_[static_cast<std::size_t>(ref.path)][static_cast<std::size_t>(ref.hop)] =
            static_cast<int>(blocks_.size()) - 1;
        place(idx + 1, slots + w);
        blocks_.pop_back();
      }
    }
    block_of_[static_cast<std::size_t>(ref.path)][static_cast<std::size_t>(ref.hop)] = -1;
  }

  const ScheduleProblem& problem_;
  const Topology& topology_;
  const RadioModel& radio_;
  int K_;
  std::vector<HopRef> order_;
  std::vector<Block> blocks_;
  std::vector<std::vector<int>> block_of_;
  Schedule best_;
  std::int64_t best_slots_ = 0;
  bool found_ = false;
  std::int64_t leaves_ = 0;
};

// Every split of `demand` over `parts` paths with all but the last part a
// multiple of `g`.
void splits_of(std::int64_t demand, std::size_t parts, std::int64_t g,
               std::vector<std::int64_t>& cur, std::vector<std::vector<std::int64_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(demand);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::int64_t x = 0; x <= demand; x += g) {
    cur.push_back(x);
    splits_of(demand - x, parts, g, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::optional<EnumerationResult> enumerate_exact(const ScheduleProblem& problem,
                                                 const Topology& topology, const RadioModel& radio,
                                                 int K) {
  if (problem.paths.empty()) return EnumerationResult{};
  if (K <= 0) K = problem.total_hops();
  PartitionSearch search(problem, topology, radio, K);
  return search.run();
}

SplitSearchResult split_search(std::span<const PathSet> path_sets, const Topology& topology,
                               const RadioModel& radio, int K, std::int64_t granularity,
                               SplitMode mode, const SolveOptions& options) {
  if (granularity < 1) throw ConfigError("split_search: granularity must be >= 1");
  SplitSearchResult out;
  out.mode = mode;
  int total_hops = 0;
  for (const PathSet& s : path_sets) {
    for (const Path& p : s.paths) total_hops += p.hop_count();
  }
  if (K <= 0) K = total_hops;

  if (mode == SplitMode::Joint) {
    const P1Instance p1 = build_p1_joint(path_sets, topology, radio, K);
    const P2Instance p2 = linearize_rlt(p1);
    const MilpSolution sol = solve_exact(p2, options);
    out.status = sol.status;
    out.candidates = 1;
    if (!sol.has_solution) return out;
    DecodedSolution dec = decode(p2.layout, sol.values);
    std::size_t at = 0;
    for (const PathSet& s : path_sets) {
      out.splits.emplace_back(dec.split.begin() + static_cast<std::ptrdiff_t>(at),
                              dec.split.begin() + static_cast<std::ptrdiff_t>(at + s.paths.size()));
      at += s.paths.size();
    }
    out.problem = std::move(dec.problem);
    out.schedule = std::move(dec.schedule);
    out.slots = out.schedule.total_slots();
    return out;
  }

  // Candidate splits per flow, then their Cartesian product.
  std::vector<std::vector<std::vector<std::int64_t>>> per_flow;
  std::vector<std::vector<std::int64_t>> proportional;
  for (const PathSet& s : path_sets) {
    const std::int64_t demand = std::accumulate(s.split.begin(), s.split.end(), std::int64_t{0});
    std::vector<std::int64_t> cur;
    per_flow.emplace_back();
    splits_of(demand, s.paths.size(), granularity, cur, per_flow.back());
    proportional.push_back(distribute_traffic(s.paths, demand));
  }

  bool have = false;
  std::int64_t best_dist = 0;
  std::vector<std::size_t> pick(path_sets.size(), 0);
  for (;;) {
    std::vector<PathSet> sets(path_sets.begin(), path_sets.end());
    std::vector<std::vector<std::int64_t>> chosen;
    std::int64_t dist = 0;
    for (std::size_t f = 0; f < sets.size(); ++f) {
      sets[f].split = per_flow[f][pick[f]];
      chosen.push_back(sets[f].split);
      for (std::size_t p = 0; p < sets[f].split.size(); ++p) {
        dist += std::abs(sets[f].split[p] - proportional[f][p]);
      }
    }
    ++out.candidates;
    const ScheduleProblem problem = make_problem(sets, topology);
    const auto res = enumerate_exact(problem, topology, radio, K);
    if (res) {
      const bool better = !have || res->slots < out.slots ||
                          (res->slots == out.slots &&
                           (dist < best_dist || (dist == best_dist && chosen < out.splits)));
      if (better) {
        have = true;
        out.slots = res->slots;
        out.schedule = res->schedule;
        out.problem = problem;
        out.splits = chosen;
        best_dist = dist;
      }
    }
    std::size_t f = 0;
    while (f < pick.size() && ++pick[f] == per_flow[f].size()) pick[f++] = 0;
    if (f == pick.size()) break;
  }
  out.status = have ? SolveStatus::Optimal : SolveStatus::Infeasible;
  return out;
}

}  // namespace mpmh::milp
