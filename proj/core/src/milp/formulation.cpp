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

#include "mpmh/milp/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpmh/error.hpp"

namespace mpmh::milp {

int Layout::hop_index(int path, int hop) const {
  const auto it = std::lower_bound(hops.begin(), hops.end(), HopRef{path, hop});
  if (it == hops.end() || !(*it == HopRef{path, hop})) throw ConfigError("hop_index: no such hop");
  return static_cast<int>(it - hops.begin());
}

namespace {

std::string hop_tag(const Layout& L, int h) {
  return "p" + std::to_string(L.hops[static_cast<std::size_t>(h)].path) + "h" +
         std::to_string(L.hops[static_cast<std::size_t>(h)].hop);
}

// Shared body of both builders. `flow_demand[p]` is the total of p's flow.
P1Instance build(ScheduleProblem problem, const Topology& topology, const RadioModel& radio,
                 int K, bool joint) {
  P1Instance out;
  Layout& L = out.layout;
  Model& m = out.model;
  L.problem = std::move(problem);
  L.K = K;
  L.joint_split = joint;

  const auto& paths = L.problem.paths;
  std::size_t longest = 0;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    longest = std::max(longest, paths[p].hops.size());
    for (std::size_t i = 0; i < paths[p].hops.size(); ++i) {
      L.hops.push_back({static_cast<int>(p), static_cast<int>(i)});
    }
  }
  if (K < 1 || static_cast<std::size_t>(K) < longest) {
    throw ConfigError("build_p1: K = " + std::to_string(K) + " is below the longest path (" +
                      std::to_string(longest) + " hops)");
  }
  const int H = static_cast<int>(L.hops.size());

  // Flow totals for the conservation rows.
  std::map<int, std::int64_t> flow_total;
  for (const auto& p : paths) flow_total[p.flow_id] += p.demand;

  L.d_tilde = 0;
  for (int h = 0; h < H; ++h) {
    const auto& ref = L.hops[static_cast<std::size_t>(h)];
    const HopTask& task = L.problem.hop(ref.path, ref.hop);
    const std::int64_t d =
        joint ? flow_total[paths[static_cast<std::size_t>(ref.path)].flow_id]
              : paths[static_cast<std::size_t>(ref.path)].demand;
    L.d_tilde = std::max(L.d_tilde, hop_weight(d, task.pkts_per_slot));
  }
  const double dt = static_cast<double>(L.d_tilde);

  L.a.assign(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(H)));
  for (int k = 0; k < K; ++k) {
    for (int h = 0; h < H; ++h) {
      L.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)] =
          m.add_variable("a_k" + std::to_string(k) + "_" + hop_tag(L, h), 0, 1, true);
    }
  }
  for (int k = 0; k < K; ++k) {
    L.delta.push_back(m.add_variable("delta_k" + std::to_string(k), 0, dt, true));
  }
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const double total = static_cast<double>(flow_total[paths[p].flow_id]);
    const double fixed = static_cast<double>(paths[p].demand);
    L.d.push_back(m.add_variable("d_p" + std::to_string(p), joint ? 0 : fixed,
                                 joint ? total : fixed, true));
  }

  std::vector<LinearTerm> obj;
  for (int k = 0; k < K; ++k) obj.push_back({L.delta[static_cast<std::size_t>(k)], 1.0});
  m.set_objective(std::move(obj));

  auto A = [&](int k, int h) { return L.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)]; };

  // Each hop in exactly one pairing.
  for (int h = 0; h < H; ++h) {
    Constraint c{"once_" + hop_tag(L, h), {}, {}, Sense::Eq, 1.0};
    for (int k = 0; k < K; ++k) c.linear.push_back({A(k, h), 1.0});
    m.add_constraint(std::move(c));
  }
  // Coverage: sum_k c * delta_k * a_kh >= d_p.
  for (int h = 0; h < H; ++h) {
    const auto& ref = L.hops[static_cast<std::size_t>(h)];
    const double rate = L.problem.hop(ref.path, ref.hop).pkts_per_slot;
    Constraint c{"cover_" + hop_tag(L, h), {}, {}, Sense::Ge, 0.0};
    c.linear.push_back({L.d[static_cast<std::size_t>(ref.path)], -1.0});
    for (int k = 0; k < K; ++k) c.bilinear.push_back({L.delta[static_cast<std::size_t>(k)], A(k, h), rate});
    m.add_constraint(std::move(c));
  }
  // Split conservation per flow.
  for (const auto& [flow, total] : flow_total) {
    Constraint c{"split_f" + std::to_string(flow), {}, {}, Sense::Eq, static_cast<double>(total)};
    for (std::size_t p = 0; p < paths.size(); ++p) {
      if (paths[p].flow_id == flow) c.linear.push_back({L.d[p], 1.0});
    }
    m.add_constraint(std::move(c));
  }
  // One hop of a path per pairing.
  for (std::size_t p = 0; p < paths.size(); ++p) {
    if (paths[p].hops.size() < 2) continue;
    for (int k = 0; k < K; ++k) {
      Constraint c{"onehop_p" + std::to_string(p) + "_k" + std::to_string(k), {}, {}, Sense::Le, 1.0};
      for (int h = 0; h < H; ++h) {
        if (L.hops[static_cast<std::size_t>(h)].path == static_cast<int>(p)) c.linear.push_back({A(k, h), 1.0});
      }
      m.add_constraint(std::move(c));
    }
  }
  // Adjacent hops of different paths never share a pairing.
  for (int h = 0; h < H; ++h) {
    for (int g = h + 1; g < H; ++g) {
      const auto& rh = L.hops[static_cast<std::size_t>(h)];
      const auto& rg = L.hops[static_cast<std::size_t>(g)];
      if (rh.path == rg.path) continue;
      if (!adjacent(L.problem.hop(rh.path, rh.hop).link, L.problem.hop(rg.path, rg.hop).link)) continue;
      for (int k = 0; k < K; ++k) {
        m.add_constraint({"adj_" + hop_tag(L, h) + "_" + hop_tag(L, g) + "_k" + std::to_string(k),
                          {{A(k, h), 1.0}, {A(k, g), 1.0}},
                          {},
                          Sense::Le,
                          1.0});
      }
    }
  }
  // Path order: prefix sums of hop i+1 never exceed those of hop i.
  for (int h = 0; h + 1 < H; ++h) {
    const auto& cur = L.hops[static_cast<std::size_t>(h)];
    const auto& nxt = L.hops[static_cast<std::size_t>(h) + 1];
    if (cur.path != nxt.path) continue;
    for (int kk = 0; kk < K; ++kk) {
      Constraint c{"order_" + hop_tag(L, h) + "_K" + std::to_string(kk), {}, {}, Sense::Le, 0.0};
      for (int k = 0; k <= kk; ++k) {
        c.linear.push_back({A(k, h + 1), 1.0});
        c.linear.push_back({A(k, h), -1.0});
      }
      m.add_constraint(std::move(c));
    }
  }
  // SINR rows, rearranged:
  //   (S - MS * noise) a_kh >= MS * rho * sum_g f_gh I_gh a_kh a_kg
  if (!std::holds_alternative<AdjacencyOnly>(radio.beam_policy)) {
    const auto positions = topology.positions();
    for (int h = 0; h < H; ++h) {
      const auto& rh = L.hops[static_cast<std::size_t>(h)];
      const HopTask& victim = L.problem.hop(rh.path, rh.hop);
      const double ms = radio.min_sinr(victim.rate);
      const double signal = received_power(radio, topology.length(victim.link));
      std::vector<std::pair<int, double>> interferers;
      for (int g = 0; g < H; ++g) {
        const auto& rg = L.hops[static_cast<std::size_t>(g)];
        if (rg.path == rh.path) continue;
        const HopTask& other = L.problem.hop(rg.path, rg.hop);
        if (adjacent(other.link, victim.link)) continue;
        const Link pair[] = {victim.link, other.link};
        const BeamState beams = BeamState::from_links(positions, pair);
        if (beam_indicator(radio.beam_policy, other.link.from, victim.link.to, beams, positions) == 0) continue;
        const double interference = received_power(
            radio, distance(positions[static_cast<std::size_t>(other.link.from)],
                            positions[static_cast<std::size_t>(victim.link.to)]));
        interferers.emplace_back(g, ms * radio.mui_factor * interference);
      }
      for (int k = 0; k < K; ++k) {
        Constraint c{"sinr_" + hop_tag(L, h) + "_k" + std::to_string(k), {}, {}, Sense::Ge, 0.0};
        c.linear.push_back({A(k, h), signal - ms * radio.noise_mw()});
        for (const auto& [g, coef] : interferers) c.bilinear.push_back({A(k, h), A(k, g), -coef});
        m.add_constraint(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace

P1Instance build_p1(const ScheduleProblem& problem, const Topology& topology,
                    const RadioModel& radio, int K) {
  return build(problem, topology, radio, K, false);
}

P1Instance build_p1_joint(std::span<const PathSet> path_sets, const Topology& topology,
                          const RadioModel& radio, int K) {
  ScheduleProblem problem;
  problem.node_count = topology.size();
  for (const PathSet& set : path_sets) {
    for (std::size_t p = 0; p < set.paths.size(); ++p) {
      PathTask task;
      task.flow_id = set.flow_id;
      task.path_index = static_cast<int>(p);
      task.demand = set.split.at(p);
      const Path& path = set.paths[p];
      for (int i = 0; i < path.hop_count(); ++i) {
        const int c = path.rate(i);
        task.hops.push_back({path.hop(i), c, static_cast<double>(c), hop_weight(task.demand, c)});
      }
      problem.paths.push_back(std::move(task));
    }
  }
  return build(std::move(problem), topology, radio, K, true);
}

Model linearize(const Model& model, ProductMap& products) {
  Model out;
  for (const auto& v : model.variables()) out.add_variable(v.name, v.lb, v.ub, v.integer);
  out.set_objective(model.objective());
  const auto& vars = model.variables();

  auto product = [&](int x, int y) {
    if (x > y) std::swap(x, y);
    const auto it = products.find({x, y});
    if (it != products.end()) return it->second;
    const Variable& X = vars[static_cast<std::size_t>(x)];
    const Variable& Y = vars[static_cast<std::size_t>(y)];
    const double c[] = {X.lb * Y.lb, X.lb * Y.ub, X.ub * Y.lb, X.ub * Y.ub};
    const int w = out.add_variable((x == y ? "sq_" : "w_") + X.name + "_" + Y.name,
                                   *std::min_element(std::begin(c), std::end(c)),
                                   *std::max_element(std::begin(c), std::end(c)), false);
    products[{x, y}] = w;
    return w;
  };

  for (const auto& row : model.constraints()) {
    Constraint lin{row.name, row.linear, {}, row.sense, row.rhs};
    for (const auto& t : row.bilinear) lin.linear.push_back({product(t.x, t.y), t.coef});
    out.add_constraint(std::move(lin));
  }

  // Bound factors for every product:
  //   (x - lx)(y - ly) >= 0, (ux - x)(uy - y) >= 0,
  //   (x - lx)(uy - y) >= 0, (ux - x)(y - ly) >= 0.
  for (const auto& [xy, w] : products) {
    const auto [x, y] = xy;
    const Variable& X = vars[static_cast<std::size_t>(x)];
    const Variable& Y = vars[static_cast<std::size_t>(y)];
    const std::string tag = out.variables()[static_cast<std::size_t>(w)].name;
    auto add = [&](const std::string& n, double cw, double cx, double cy, Sense s, double rhs) {
      std::vector<LinearTerm> t{{w, cw}};
      if (x == y) {
        t.push_back({x, cx + cy});
      } else {
        t.push_back({x, cx});
        t.push_back({y, cy});
      }
      out.add_constraint({tag + "_" + n, std::move(t), {}, s, rhs});
    };
    add("ll", 1.0, -Y.lb, -X.lb, Sense::Ge, -X.lb * Y.lb);
    add("uu", 1.0, -Y.ub, -X.ub, Sense::Ge, -X.ub * Y.ub);
    add("lu", 1.0, -Y.ub, -X.lb, Sense::Le, -X.lb * Y.ub);
    add("ul", 1.0, -Y.lb, -X.ub, Sense::Le, -X.ub * Y.lb);
  }
  return out;
}

P2Instance linearize_rlt(const P1Instance& p1) {
  P2Instance out;
  out.layout = p1.layout;
  out.model = linearize(p1.model, out.products);
  const Layout& L = out.layout;
  out.s.assign(static_cast<std::size_t>(L.K), std::vector<int>(L.hops.size(), -1));
  for (int k = 0; k < L.K; ++k) {
    for (std::size_t h = 0; h < L.hops.size(); ++h) {
      int x = L.delta[static_cast<std::size_t>(k)];
      int y = L.a[static_cast<std::size_t>(k)][h];
      if (x > y) std::swap(x, y);
      out.s[static_cast<std::size_t>(k)][h] = out.products.at({x, y});
    }
  }
  return out;
}

std::vector<double> lift_point(const P2Instance& p2, std::span<const double> p1_point) {
  std::vector<double> x(static_cast<std::size_t>(p2.model.variable_count()), 0.0);
  std::copy(p1_point.begin(), p1_point.end(), x.begin());
  for (const auto& [xy, w] : p2.products) {
    x[static_cast<std::size_t>(w)] = p1_point[static_cast<std::size_t>(xy.first)] *
                                     p1_point[static_cast<std::size_t>(xy.second)];
  }
  return x;
}

std::vector<double> point_from_schedule(const P1Instance& p1, const Schedule& schedule,
                                        std::span<const std::int64_t> split) {
  const Layout& L = p1.layout;
  if (schedule.size() > L.K) throw ConfigError("point_from_schedule: more pairings than K");
  std::vector<double> x(static_cast<std::size_t>(p1.model.variable_count()), 0.0);
  for (int k = 0; k < schedule.size(); ++k) {
    const Pairing& pr = schedule.pairings[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(L.delta[static_cast<std::size_t>(k)])] = static_cast<double>(pr.delta);
    for (const HopRef& r : pr.hops) {
      x[static_cast<std::size_t>(L.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(L.hop_index(r.path, r.hop))])] = 1.0;
    }
  }
  for (std::size_t p = 0; p < L.problem.paths.size(); ++p) {
    x[static_cast<std::size_t>(L.d[p])] =
        static_cast<double>(split.empty() ? L.problem.paths[p].demand : split[p]);
  }
  return x;
}

DecodedSolution decode(const Layout& L, std::span<const double> x) {
  DecodedSolution out;
  auto val = [&](int j) { return static_cast<std::int64_t>(std::llround(x[static_cast<std::size_t>(j)])); };
  std::vector<int> remap(L.problem.paths.size(), -1);
  out.problem.node_count = L.problem.node_count;
  for (std::size_t p = 0; p < L.problem.paths.size(); ++p) {
    const std::int64_t d = val(L.d[p]);
    out.split.push_back(d);
    if (d <= 0) continue;
    PathTask task = L.problem.paths[p];
    task.demand = d;
    for (HopTask& h : task.hops) h.weight = hop_weight(d, h.pkts_per_slot);
    remap[p] = static_cast<int>(out.problem.paths.size());
    out.problem.paths.push_back(std::move(task));
  }
  for (int k = 0; k < L.K; ++k) {
    Pairing pr;
    for (std::size_t h = 0; h < L.hops.size(); ++h) {
      if (val(L.a[static_cast<std::size_t>(k)][h]) != 1) continue;
      const int p = remap[static_cast<std::size_t>(L.hops[h].path)];
      if (p >= 0) pr.hops.push_back({p, L.hops[h].hop});
    }
    if (pr.hops.empty()) continue;
    pr.delta = val(L.delta[static_cast<std::size_t>(k)]);
    out.schedule.pairings.push_back(std::move(pr));
  }
  return out;
}

}  // namespace mpmh::milp
