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

#ifndef MPMH_SCENARIO_HPP_
#define MPMH_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mpmh/network.hpp"
#include "mpmh/radio.hpp"
#include "mpmh/scheme.hpp"
#include "mpmh/sim.hpp"
#include "mpmh/traffic.hpp"

namespace mpmh {

struct ExplicitLink {
  std::string from;
  std::string to;
  int rate = 0;
};

// Random placement, redrawn until the flow-selection requirement holds.
struct GeneratedTopology {
  int count = 10;
  double side_m = 8.0;
  std::uint64_t seed = 1;
  std::string quantizer = "distance";  // distance | snr
  int max_redraws = 10000;
  // Exact number of flows the selection rule must pick at nominal intensity;
  // negative disables the check.
  int require_selected = -1;
  int max_oracle_hops = 0;  // > 0: reject draws whose multi-path sets exceed it
};

struct FlowSpec {
  std::string src;
  std::string dst;
  std::int64_t demand = 0;  // static scenarios only
  double weight = 1.0;      // relative offered load
  bool multipath = false;   // forced into the multi-path set
};

// Flow 0 joins the farthest node pair and carries `heavy_weight`; the others
// are distinct random ordered pairs with weight 1.
struct GeneratedFlows {
  int count = 10;
  double heavy_weight = 8.0;
  bool force_heavy = false;
};

struct Scenario {
  std::string name;
  // Explicit topology (when `generated` is empty).
  std::vector<Node> nodes;
  std::vector<int> rate_alphabet;
  std::vector<ExplicitLink> links;
  std::optional<GeneratedTopology> generated;

  RadioModel radio;
  std::vector<FlowSpec> flows;
  std::optional<GeneratedFlows> generated_flows;
  std::optional<TrafficSpec> traffic;  // absent: static single-frame demand
  std::string replay_file;
  MpmhParams mpmh;
  SimParams sim;
  int focus_flow = 0;
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> schedulers{"mpmh"};
  std::vector<double> loads;  // default sweep loads

  bool is_static() const { return !traffic.has_value() && replay_file.empty(); }
};

// Parses the nested key-value scenario text, applies defaults and rejects
// unknown keys. Errors name the offending field.
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");
Scenario load_scenario_file(const std::filesystem::path& file);

std::vector<std::string> builtin_scenario_names();
std::optional<Scenario> builtin_scenario(const std::string& name);

// Built-in name or file path.
Scenario load_scenario(const std::string& name_or_path);

// Fully resolved form; parse_scenario(to_yaml(s)) round-trips.
std::string to_yaml(const Scenario& s);

// Instantiated topology and flows. Generated parts are drawn here.
struct Instance {
  SimScenario sim;
  int redraws = 0;
};
Instance instantiate(const Scenario& s);

// Flows with their static demands, for single-frame scheduling.
std::vector<Flow> static_flows(const Scenario& s, const Topology& topology);

}  // namespace mpmh

#endif  // MPMH_SCENARIO_HPP_
