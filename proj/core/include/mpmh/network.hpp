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

#ifndef MPMH_NETWORK_HPP_
#define MPMH_NETWORK_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mpmh/link.hpp"
#include "mpmh/radio.hpp"

namespace mpmh {

struct Node {
  std::string name;
  Vec2 position;
  bool is_pnc = false;
};

// Nodes plus the directed rate matrix (packets per slot, 0 = blocked).
class Topology {
 public:
  // Validates: one PNC, unique names, distinct positions. All links start
  // blocked.
  Topology(std::vector<Node> nodes, std::vector<int> rate_alphabet);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const Vec2> positions() const { return positions_; }
  NodeId pnc() const;
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return node(id).name; }
  const std::vector<int>& rate_alphabet() const { return alphabet_; }

  int rate(Link l) const { return rates_[index(l)]; }
  bool blocked(Link l) const { return rate(l) == 0; }
  // Throws ConfigError if `rate` is neither 0 nor in the alphabet.
  void set_rate(Link l, int rate);
  double length(Link l) const;

  // Receivers of unblocked links leaving `from`, ascending id.
  std::vector<NodeId> successors(NodeId from) const;

 private:
  std::size_t index(Link l) const;

  std::vector<Node> nodes_;
  std::vector<Vec2> positions_;
  std::vector<int> rates_;
  std::vector<int> alphabet_;
};

// I_{vpi,uqj}: the two links share an endpoint.
inline bool adjacent(const Link& a, const Link& b) {
  return a.from == b.from || a.from == b.to || a.to == b.from || a.to == b.to;
}

// Rate buckets by distance: d <= upper_m[i] gets rates[i]; beyond the last
// bucket the link is blocked.
struct DistanceQuantizer {
  std::vector<double> upper_m;
  std::vector<int> rates;

  // Buckets at 25/50/75/100% of the arena diagonal -> rates 4/3/2/1.
  static DistanceQuantizer for_arena(double side_m);
  int rate_for(double dist_m) const;
};

// Highest rate-table entry whose threshold the interference-free SNR meets.
struct SnrQuantizer {};

using RateQuantizer = std::variant<DistanceQuantizer, SnrQuantizer>;

// Fills every ordered pair's rate from geometry.
Topology rate_from_distance(const RadioModel& model, const Topology& topology,
                            const RateQuantizer& quantizer);

// `count` nodes uniform in [0, side]^2, named N0..; N0 is the PNC.
std::vector<Node> uniform_nodes(int count, double side_m, std::mt19937_64& rng);

struct Flow {
  int id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  std::int64_t demand_pkts = 0;
  double demand_intensity = 0.0;  // packets per slot, long-run
};

// EMA: (1 - alpha) * current + alpha * arrivals / frame_slots.
double demand_intensity_update(double current, std::int64_t arrivals, std::int64_t frame_slots,
                               double alpha);

// Loop-free chain of unblocked hops, rates captured from the topology.
class Path {
 public:
  Path(std::vector<NodeId> nodes, const Topology& topology);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  int hop_count() const { return static_cast<int>(rates_.size()); }
  Link hop(int i) const { return {nodes_[static_cast<std::size_t>(i)], nodes_[static_cast<std::size_t>(i) + 1]}; }
  int rate(int i) const { return rates_[static_cast<std::size_t>(i)]; }
  NodeId first() const { return nodes_.front(); }
  NodeId last() const { return nodes_.back(); }

  // c_l(p) and h_l(p); the first-occurring hop wins ties.
  int bottleneck_rate() const;
  int bottleneck_hop() const;

  bool shares_hop(const Path& other) const;
  std::string describe(const Topology& topology) const;

  friend bool operator==(const Path& a, const Path& b) { return a.nodes_ == b.nodes_; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<int> rates_;
};

struct PathSet {
  int flow_id = 0;
  std::vector<Path> paths;
  std::vector<std::int64_t> split;

  // Throws ScheduleError: split sums to demand, hop-disjoint, |paths| <= n/2.
  void check_invariants(std::int64_t demand, int node_count) const;
};

}  // namespace mpmh

#endif  // MPMH_NETWORK_HPP_
