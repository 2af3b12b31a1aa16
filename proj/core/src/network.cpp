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

#include "mpmh/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mpmh/error.hpp"

namespace mpmh {

Topology::Topology(std::vector<Node> nodes, std::vector<int> rate_alphabet)
    : nodes_(std::move(nodes)), alphabet_(std::move(rate_alphabet)) {
  if (nodes_.size() < 2) throw ConfigError("topology needs at least two nodes");
  std::set<std::string> names;
  int pncs = 0;
  for (const Node& n : nodes_) {
    if (!names.insert(n.name).second) throw ConfigError("duplicate node name '" + n.name + "'");
    pncs += n.is_pnc ? 1 : 0;
    positions_.push_back(n.position);
  }
  if (pncs != 1) throw ConfigError("topology must have exactly one PNC");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = i + 1; j < positions_.size(); ++j) {
      if (positions_[i] == positions_[j]) {
        throw ConfigError("nodes '" + nodes_[i].name + "' and '" + nodes_[j].name +
                          "' are co-located");
      }
    }
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  if (alphabet_.empty() || alphabet_.front() <= 0) {
    throw ConfigError("rate alphabet must be non-empty and positive");
  }
  rates_.assign(nodes_.size() * nodes_.size(), 0);
}

NodeId Topology::pnc() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_pnc) return static_cast<NodeId>(i);
  }
  return 0;
}

std::optional<NodeId> Topology::find(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

std::size_t Topology::index(Link l) const {
  const auto n = nodes_.size();
  if (l.from < 0 || l.to < 0 || static_cast<std::size_t>(l.from) >= n ||
      static_cast<std::size_t>(l.to) >= n || l.from == l.to) {
    throw ConfigError("invalid link " + std::to_string(l.from) + "->" + std::to_string(l.to));
  }
  return static_cast<std::size_t>(l.from) * n + static_cast<std::size_t>(l.to);
}

void Topology::set_rate(Link l, int rate) {
  if (rate != 0 && !std::binary_search(alphabet_.begin(), alphabet_.end(), rate)) {
    throw ConfigError("rate " + std::to_string(rate) + " on " + name(l.from) + "->" + name(l.to) +
                      " is not in the rate alphabet");
  }
  rates_[index(l)] = rate;
}

double Topology::length(Link l) const { return distance(positions_.at(static_cast<std::size_t>(l.from)), positions_.at(static_cast<std::size_t>(l.to))); }

std::vector<NodeId> Topology::successors(NodeId from) const {
  std::vector<NodeId> out;
  for (NodeId to = 0; to < size(); ++to) {
    if (to != from && !blocked({from, to})) out.push_back(to);
  }
  return out;
}

DistanceQuantizer DistanceQuantizer::for_arena(double side_m) {
  const double diag = side_m * std::sqrt(2.0);
  return {{0.25 * diag, 0.5 * diag, 0.75 * diag, diag}, {4, 3, 2, 1}};
}

int DistanceQuantizer::rate_for(double dist_m) const {
  for (std::size_t i = 0; i < upper_m.size(); ++i) {
    if (dist_m <= upper_m[i]) return rates[i];
  }
  return 0;
}

Topology rate_from_distance(const RadioModel& model, const Topology& topology,
                            const RateQuantizer& quantizer) {
  Topology out = topology;
  for (NodeId s = 0; s < out.size(); ++s) {
    for (NodeId r = 0; r < out.size(); ++r) {
      if (s == r) continue;
      const double d = out.length({s, r});
      int rate = 0;
      if (const auto* dq = std::get_if<DistanceQuantizer>(&quantizer)) {
        rate = dq->rate_for(d);
      } else {
        const double snr = received_power(model, d) / model.noise_mw();
        for (const RateEntry& e : model.rate_table) {
          if (snr >= e.min_sinr_linear) rate = e.rate;
        }
      }
      out.set_rate({s, r}, rate);
    }
  }
  return out;
}

std::vector<Node> uniform_nodes(int count, double side_m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, side_m);
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    nodes.push_back({"N" + std::to_string(i), {coord(rng), coord(rng)}, i == 0});
  }
  return nodes;
}

double demand_intensity_update(double current, std::int64_t arrivals, std::int64_t frame_slots,
                               double alpha) {
  if (frame_slots <= 0) throw DomainError("demand_intensity_update: frame_slots must be > 0");
  if (!(alpha > 0 && alpha <= 1)) throw DomainError("demand_intensity_update: alpha must be in (0,1]");
  const double observed = static_cast<double>(arrivals) / static_cast<double>(frame_slots);
  return (1.0 - alpha) * current + alpha * observed;
}

Path::Path(std::vector<NodeId> nodes, const Topology& topology) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ConfigError("a path needs at least one hop");
  std::set<NodeId> seen;
  for (NodeId n : nodes_) {
    if (!seen.insert(n).second) throw ConfigError("path revisits node " + topology.name(n));
  }
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const int r = topology.rate({nodes_[i], nodes_[i + 1]});
    if (r <= 0) {
      throw ConfigError("path hop " + topology.name(nodes_[i]) + "->" +
                        topology.name(nodes_[i + 1]) + " is blocked");
    }
    rates_.push_back(r);
  }
}

int Path::bottleneck_rate() const { return rates_[static_cast<std::size_t>(bottleneck_hop())]; }

int Path::bottleneck_hop() const {
  return static_cast<int>(std::min_element(rates_.begin(), rates_.end()) - rates_.begin());
}

bool Path::shares_hop(const Path& other) const {
  for (int i = 0; i < hop_count(); ++i) {
    for (int j = 0; j < other.hop_count(); ++j) {
      if (hop(i) == other.hop(j)) return true;
    }
  }
  return false;
}

std::string Path::describe(const Topology& topology) const {
  std::string out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i > 0) out += "->";
    out += topology.name(nodes_[i]);
  }
  return out;
}

void PathSet::check_invariants(std::int64_t demand, int node_count) const {
  if (split.size() != paths.size()) throw ScheduleError("path set split/path count mismatch");
  if (std::accumulate(split.begin(), split.end(), std::int64_t{0}) != demand) {
    throw ScheduleError("path set split does not sum to the flow demand");
  }
  if (static_cast<int>(paths.size()) > node_count / 2) {
    throw ScheduleError("path set exceeds floor(n/2) paths");
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (paths[i].shares_hop(paths[j])) throw ScheduleError("path set paths share a hop");
    }
  }
}

}  // namespace mpmh
