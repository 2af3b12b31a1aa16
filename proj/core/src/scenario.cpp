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

#include "mpmh/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mpmh/error.hpp"

namespace mpmh {

namespace {

// Typed access to one mapping node; remembers which keys were read so the
// leftovers can be rejected.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_ + ": expected a mapping");
  }
  ~Section() = default;
  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  bool has(const std::string& key) {
    used_.insert(key);
    return static_cast<bool>(node_[key]);
  }
  YAML::Node raw(const std::string& key) {
    used_.insert(key);
    return node_[key];
  }
  std::string field(const std::string& key) const { return path_ + "." + key; }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    out = convert<T>(node_[key], field(key));
  }

  template <typename T>
  static T convert(const YAML::Node& n, const std::string& where) {
    try {
      if (!n.IsScalar()) throw ConfigError(where + ": expected a scalar");
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(where + ": invalid value '" + n.Scalar() + "'");
    }
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!used_.count(key)) throw ConfigError(path_ + ": unknown key '" + key + "'");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

template <typename T>
std::vector<T> scalar_list(const YAML::Node& n, const std::string& where) {
  if (!n.IsSequence()) throw ConfigError(where + ": expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.push_back(Section::convert<T>(n[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void parse_topology(Section& sec, Scenario& s) {
  if (sec.has("generate")) {
    Section g(sec.raw("generate"), sec.field("generate"));
    GeneratedTopology gt;
    g.get("count", gt.count);
    g.get("side_m", gt.side_m);
    g.get("seed", gt.seed);
    g.get("quantizer", gt.quantizer);
    g.get("max_redraws", gt.max_redraws);
    g.get("require_selected", gt.require_selected);
    g.get("max_oracle_hops", gt.max_oracle_hops);
    g.finish();
    if (gt.count < 2) throw ConfigError(g.field("count") + ": must be >= 2");
    if (!(gt.side_m > 0)) throw ConfigError(g.field("side_m") + ": must be > 0");
    if (gt.quantizer != "distance" && gt.quantizer != "snr") {
      throw ConfigError(g.field("quantizer") + ": expected distance or snr");
    }
    if (gt.max_redraws < 1) throw ConfigError(g.field("max_redraws") + ": must be >= 1");
    s.generated = gt;
  }
  if (sec.has("nodes")) {
    const YAML::Node list = sec.raw("nodes");
    if (!list.IsSequence()) throw ConfigError(sec.field("nodes") + ": expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section n(list[i], sec.field("nodes") + "[" + std::to_string(i) + "]");
      Node node;
      if (!n.has("name")) throw ConfigError(n.field("name") + ": required");
      n.get("name", node.name);
      n.get("x", node.position.x);
      n.get("y", node.position.y);
      n.get("pnc", node.is_pnc);
      n.finish();
      s.nodes.push_back(std::move(node));
    }
  }
  if (sec.has("rate_alphabet")) s.rate_alphabet = scalar_list<int>(sec.raw("rate_alphabet"), sec.field("rate_alphabet"));
  if (sec.has("links")) {
    const YAML::Node list = sec.raw("links");
    if (!list.IsSequence()) throw ConfigError(sec.field("links") + ": expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section l(list[i], sec.field("links") + "[" + std::to_string(i) + "]");
      ExplicitLink link;
      l.get("from", link.from);
      l.get("to", link.to);
      l.get("rate", link.rate);
      l.finish();
      s.links.push_back(std::move(link));
    }
  }
  sec.finish();
  if (s.generated && !s.nodes.empty()) {
    throw ConfigError(sec.field("generate") + ": cannot be combined with explicit nodes");
  }
  if (!s.generated && s.nodes.empty()) throw ConfigError(sec.field("nodes") + ": required");
}

void parse_radio(Section& sec, RadioModel& r) {
  sec.get("tx_power_mw", r.tx_power_mw);
  sec.get("ref_loss_db", r.ref_loss_db);
  sec.get("path_loss_exp", r.path_loss_exp);
  sec.get("mui_factor", r.mui_factor);
  sec.get("bandwidth_hz", r.bandwidth_hz);
  if (sec.has("noise_psd_dbm_per_hz")) {
    double dbm = 0;
    sec.get("noise_psd_dbm_per_hz", dbm);
    r.noise_psd_mw_per_hz = db_to_linear(dbm);
  }
  if (sec.has("rate_table")) {
    const YAML::Node list = sec.raw("rate_table");
    if (!list.IsSequence()) throw ConfigError(sec.field("rate_table") + ": expected a list");
    r.rate_table.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section e(list[i], sec.field("rate_table") + "[" + std::to_string(i) + "]");
      double db = 0;
      int rate = 0;
      e.get("min_sinr_db", db);
      e.get("rate", rate);
      e.finish();
      r.rate_table.push_back({db_to_linear(db), rate});
    }
  }
  std::string beam = "adjacency";
  double width_deg = 30.0;
  sec.get("beam", beam);
  sec.get("beamwidth_deg", width_deg);
  if (beam == "adjacency") {
    r.beam_policy = AdjacencyOnly{};
  } else if (beam == "sector") {
    r.beam_policy = SectorBeam{width_deg * std::numbers::pi / 180.0};
  } else {
    throw ConfigError(sec.field("beam") + ": expected adjacency or sector");
  }
  sec.finish();
  try {
    r.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(sec.field("") + " " + e.what());
  }
}

void parse_flows(const YAML::Node& node, Scenario& s) {
  if (node.IsMap()) {
    Section sec(node, "flows");
    if (!sec.has("generate")) {
      sec.finish();
      throw ConfigError("flows: expected a list or a 'generate' mapping");
    }
    Section g(sec.raw("generate"), "flows.generate");
    GeneratedFlows gf;
    g.get("count", gf.count);
    g.get("heavy_weight", gf.heavy_weight);
    g.get("force_heavy", gf.force_heavy);
    g.finish();
    sec.finish();
    if (gf.count < 1) throw ConfigError("flows.generate.count: must be >= 1");
    if (!(gf.heavy_weight > 0)) throw ConfigError("flows.generate.heavy_weight: must be > 0");
    s.generated_flows = gf;
    return;
  }
  if (!node.IsSequence()) throw ConfigError("flows: expected a list or a 'generate' mapping");
  for (std::size_t i = 0; i < node.size(); ++i) {
    Section f(node[i], "flows[" + std::to_string(i) + "]");
    FlowSpec spec;
    if (!f.has("src") || !f.has("dst")) throw ConfigError(f.field("src/dst") + ": required");
    f.get("src", spec.src);
    f.get("dst", spec.dst);
    f.get("demand", spec.demand);
    f.get("weight", spec.weight);
    f.get("multipath", spec.multipath);
    f.finish();
    if (spec.demand < 0) throw ConfigError(f.field("demand") + ": must be >= 0");
    if (spec.weight < 0) throw ConfigError(f.field("weight") + ": must be >= 0");
    s.flows.push_back(std::move(spec));
  }
}

void parse_traffic(Section& sec, Scenario& s) {
  TrafficSpec t;
  std::string mode = "poisson";
  sec.get("mode", mode);
  sec.get("load", t.load);
  sec.get("packet_bytes", t.packet_bytes);
  IppMode ipp;
  sec.get("ipp_ratio", ipp.ratio);
  sec.get("ipp_p1", ipp.p1);
  sec.get("replay", s.replay_file);
  sec.finish();
  if (mode == "poisson") {
    t.mode = PoissonMode{};
  } else if (mode == "ipp") {
    t.mode = ipp;
  } else {
    throw ConfigError("traffic.mode: expected poisson or ipp");
  }
  try {
    t.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()));
  }
  s.traffic = t;
}

std::vector<double> parse_loads(const YAML::Node& n, const std::string& where) {
  if (n.IsScalar()) {
    // "a..b" shorthand for integer loads a, a+1, ..., b
    const std::string text = n.Scalar();
    const auto dots = text.find("..");
    if (dots == std::string::npos) return {Section::convert<double>(n, where)};
    try {
      const int a = std::stoi(text.substr(0, dots));
      const int b = std::stoi(text.substr(dots + 2));
      if (a < 1 || b < a) throw ConfigError(where + ": empty range");
      std::vector<double> out;
      for (int x = a; x <= b; ++x) out.push_back(x);
      return out;
    } catch (const std::logic_error&) {
      throw ConfigError(where + ": invalid range '" + text + "'");
    }
  }
  return scalar_list<double>(n, where);
}

Scenario parse_node(const YAML::Node& root, const std::string& source) {
  if (!root || root.IsNull()) throw ConfigError(source + ": empty scenario");
  Section top(root, source);
  Scenario s;
  top.get("name", s.name);
  if (!top.has("topology")) throw ConfigError(source + ": topology is required");
  {
    Section t(top.raw("topology"), "topology");
    parse_topology(t, s);
  }
  if (top.has("radio")) {
    Section r(top.raw("radio"), "radio");
    parse_radio(r, s.radio);
  }
  if (!top.has("flows")) throw ConfigError(source + ": flows is required");
  parse_flows(top.raw("flows"), s);
  if (top.has("traffic")) {
    Section t(top.raw("traffic"), "traffic");
    parse_traffic(t, s);
  }
  if (top.has("mpmh")) {
    Section m(top.raw("mpmh"), "mpmh");
    m.get("epsilon", s.mpmh.epsilon);
    m.get("h_max", s.mpmh.h_max);
    m.get("frame_slot_cap", s.mpmh.frame_slot_cap);
    m.finish();
  }
  s.mpmh.validate();
  if (top.has("sim")) {
    Section m(top.raw("sim"), "sim");
    m.get("length_slots", s.sim.length_slots);
    m.get("delay_threshold", s.sim.delay_threshold);
    m.get("poll_slots", s.sim.poll_slots);
    m.get("sched_slots", s.sim.sched_slots);
    m.get("push_slots", s.sim.push_slots);
    m.get("ema_alpha", s.sim.ema_alpha);
    m.get("initial_packets_max", s.sim.initial_packets_max);
    if (m.has("admission")) {
      try {
        s.sim.admission = parse_admission(Section::convert<std::string>(m.raw("admission"), m.field("admission")));
      } catch (const ConfigError& e) {
        throw ConfigError(m.field("admission") + ": " + e.what());
      }
    }
    m.get("focus_flow", s.focus_flow);
    m.finish();
  }
  s.sim.validate();
  if (top.has("run")) {
    Section r(top.raw("run"), "run");
    if (r.has("seeds")) s.seeds = scalar_list<std::uint64_t>(r.raw("seeds"), "run.seeds");
    if (r.has("schedulers")) s.schedulers = scalar_list<std::string>(r.raw("schedulers"), "run.schedulers");
    if (r.has("loads")) s.loads = parse_loads(r.raw("loads"), "run.loads");
    r.finish();
    if (s.seeds.empty()) throw ConfigError("run.seeds: must not be empty");
    for (const auto& name : s.schedulers) parse_scheduler(name);
  }
  top.finish();

  const int flow_count = s.generated_flows ? s.generated_flows->count : static_cast<int>(s.flows.size());
  if (flow_count == 0) throw ConfigError("flows: at least one flow is required");
  if (s.focus_flow < 0 || s.focus_flow >= flow_count) throw ConfigError("sim.focus_flow: no such flow");
  return s;
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num_db(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <typename T>
std::string list(const std::vector<T>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, std::string>) {
      out += xs[i];
    } else if constexpr (std::is_floating_point_v<T>) {
      out += num(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out + "]";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

constexpr const char* kFig1b = R"(name: fig1b
topology:
  nodes:
    - {name: A, x: 0, y: 0, pnc: true}
    - {name: B, x: 4, y: 0}
    - {name: C, x: 1, y: 1.5}
    - {name: D, x: 1, y: -1.5}
    - {name: E, x: 3, y: 1.5}
    - {name: F, x: 3, y: -1.5}
  rate_alphabet: [1, 2, 3, 6]
  links:
    - {from: A, to: B, rate: 1}
    - {from: A, to: C, rate: 6}
    - {from: C, to: E, rate: 3}
    - {from: E, to: B, rate: 6}
    - {from: A, to: D, rate: 6}
    - {from: D, to: F, rate: 2}
    - {from: F, to: B, rate: 6}
radio:
  rate_table:
    - {min_sinr_db: 10, rate: 1}
    - {min_sinr_db: 16, rate: 2}
    - {min_sinr_db: 22, rate: 3}
    - {min_sinr_db: 28, rate: 6}
flows:
  - {src: A, dst: B, demand: 18, multipath: true}
mpmh: {h_max: 3}
run: {schedulers: [mpmh]}
)";

constexpr const char* kWpan10 = R"(name: wpan10
topology:
  generate: {count: 10, side_m: 8, seed: 1, require_selected: 1}
flows:
  generate: {count: 10, heavy_weight: 8}
traffic: {mode: poisson, load: 5}
mpmh: {epsilon: 0.0625, h_max: 3}
run:
  seeds: [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]
  schedulers: [mpmh, fdmac, fdmac-ur]
  loads: 1..10
)";

constexpr const char* kSingle = R"(name: single
topology:
  generate: {count: 8, side_m: 8, seed: 3, max_oracle_hops: 9}
flows:
  generate: {count: 1, force_heavy: true}
traffic: {mode: poisson, load: 3}
mpmh: {h_max: 3}
run:
  seeds: [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]
  schedulers: [mpmh, oracle]
  loads: 1..5
)";

struct Builtin {
  const char* name;
  const char* text;
};
constexpr Builtin kBuiltins[] = {{"fig1b", kFig1b}, {"wpan10", kWpan10}, {"single", kSingle}};

std::vector<int> default_alphabet(const Scenario& s) {
  if (!s.rate_alphabet.empty()) return s.rate_alphabet;
  if (s.generated && s.generated->quantizer == "distance") return {1, 2, 3, 4};
  std::vector<int> out;
  for (const auto& e : s.radio.rate_table) out.push_back(e.rate);
  return out;
}

NodeId resolve(const Topology& t, const std::string& name, const std::string& where) {
  const auto id = t.find(name);
  if (!id) throw ConfigError(where + ": unknown node '" + name + "'");
  return *id;
}

struct FlowDraw {
  std::vector<Flow> flows;
  std::vector<double> weights;
  std::vector<int> forced;
};

FlowDraw draw_flows(const Scenario& s, const Topology& t, std::mt19937_64& rng) {
  FlowDraw out;
  if (!s.generated_flows) {
    for (std::size_t i = 0; i < s.flows.size(); ++i) {
      const FlowSpec& f = s.flows[i];
      const std::string where = "flows[" + std::to_string(i) + "]";
      Flow flow{static_cast<int>(i), resolve(t, f.src, where + ".src"), resolve(t, f.dst, where + ".dst"), 0, 0.0};
      if (flow.src == flow.dst) throw ConfigError(where + ": src equals dst");
      out.flows.push_back(flow);
      out.weights.push_back(f.weight);
      if (f.multipath) out.forced.push_back(flow.id);
    }
    return out;
  }
  const GeneratedFlows& g = *s.generated_flows;
  const int n = t.size();
  // Farthest pair first.
  NodeId a = 0, b = 1;
  double far = -1;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double d = t.length({i, j});
      if (d > far) {
        far = d;
        a = i;
        b = j;
      }
    }
  }
  std::set<std::pair<NodeId, NodeId>> used{{a, b}};
  out.flows.push_back({0, a, b, 0, 0.0});
  out.weights.push_back(g.heavy_weight);
  if (g.force_heavy) out.forced.push_back(0);
  if (g.count - 1 > n * (n - 1) - 1) throw ConfigError("flows.generate.count: more flows than node pairs");
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  while (static_cast<int>(out.flows.size()) < g.count) {
    const NodeId src = pick(rng);
    const NodeId dst = pick(rng);
    if (src == dst || !used.insert({src, dst}).second) continue;
    out.flows.push_back({static_cast<int>(out.flows.size()), src, dst, 0, 0.0});
    out.weights.push_back(1.0);
  }
  return out;
}

// Acceptance test for a generated draw.
bool acceptable(const Scenario& s, const Topology& t, const FlowDraw& d) {
  const GeneratedTopology& g = *s.generated;
  std::vector<Flow> nominal = d.flows;
  for (std::size_t i = 0; i < nominal.size(); ++i) nominal[i].demand_intensity = d.weights[i];
  FlowSelection sel = select_mpmh_flows(nominal, t, s.mpmh.epsilon);
  if (g.require_selected >= 0 && static_cast<int>(sel.flow_ids.size()) != g.require_selected) return false;
  if (g.max_oracle_hops > 0) {
    std::vector<int> multi = sel.flow_ids;
    multi.insert(multi.end(), d.forced.begin(), d.forced.end());
    int hops = 0;
    for (int id : multi) {
      const auto paths = select_paths(t, d.flows[static_cast<std::size_t>(id)], s.mpmh.h_max);
      if (paths.size() < 2) return false;
      for (const Path& p : paths) hops += p.hop_count();
    }
    if (hops > g.max_oracle_hops) return false;
  }
  return true;
}

SimScenario assemble(const Scenario& s, Topology t, FlowDraw d) {
  SimScenario out{std::move(t), s.radio, std::move(d.flows), std::move(d.weights),
                  s.traffic.value_or(TrafficSpec{}), {}, s.mpmh, s.sim, std::move(d.forced),
                  s.focus_flow};
  if (!s.replay_file.empty()) out.replay = load_replay(s.replay_file, static_cast<int>(out.flows.size()));
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return parse_node(root, source);
}

Scenario load_scenario_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open scenario " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), file.string());
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins) out.emplace_back(b.name);
  return out;
}

std::optional<Scenario> builtin_scenario(const std::string& name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) return parse_scenario(b.text, name);
  }
  return std::nullopt;
}

Scenario load_scenario(const std::string& name_or_path) {
  if (auto s = builtin_scenario(name_or_path)) return *s;
  if (!std::filesystem::exists(name_or_path)) {
    std::string names;
    for (const auto& n : builtin_scenario_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("'" + name_or_path + "' is neither a file nor a built-in scenario (" + names + ")");
  }
  return load_scenario_file(name_or_path);
}

std::string to_yaml(const Scenario& s) {
  std::ostringstream o;
  o << "name: " << quote(s.name) << "\n";
  o << "topology:\n";
  if (s.generated) {
    const auto& g = *s.generated;
    o << "  generate:\n"
      << "    count: " << g.count << "\n"
      << "    side_m: " << num(g.side_m) << "\n"
      << "    seed: " << g.seed << "\n"
      << "    quantizer: " << g.quantizer << "\n"
      << "    max_redraws: " << g.max_redraws << "\n"
      << "    require_selected: " << g.require_selected << "\n"
      << "    max_oracle_hops: " << g.max_oracle_hops << "\n";
  }
  if (!s.nodes.empty()) {
    o << "  nodes:\n";
    for (const auto& n : s.nodes) {
      o << "    - {name: " << quote(n.name) << ", x: " << num(n.position.x) << ", y: " << num(n.position.y)
        << ", pnc: " << (n.is_pnc ? "true" : "false") << "}\n";
    }
  }
  if (!s.rate_alphabet.empty()) o << "  rate_alphabet: " << list(s.rate_alphabet) << "\n";
  if (!s.links.empty()) {
    o << "  links:\n";
    for (const auto& l : s.links) {
      o << "    - {from: " << quote(l.from) << ", to: " << quote(l.to) << ", rate: " << l.rate << "}\n";
    }
  }
  const RadioModel& r = s.radio;
  o << "radio:\n"
    << "  tx_power_mw: " << num(r.tx_power_mw) << "\n"
    << "  ref_loss_db: " << num(r.ref_loss_db) << "\n"
    << "  path_loss_exp: " << num(r.path_loss_exp) << "\n"
    << "  mui_factor: " << num(r.mui_factor) << "\n"
    << "  bandwidth_hz: " << num(r.bandwidth_hz) << "\n"
    << "  noise_psd_dbm_per_hz: " << num_db(linear_to_db(r.noise_psd_mw_per_hz)) << "\n"
    << "  rate_table:\n";
  for (const auto& e : r.rate_table) {
    o << "    - {min_sinr_db: " << num_db(linear_to_db(e.min_sinr_linear)) << ", rate: " << e.rate << "}\n";
  }
  if (const auto* sb = std::get_if<SectorBeam>(&r.beam_policy)) {
    o << "  beam: sector\n  beamwidth_deg: " << num_db(sb->beamwidth_rad * 180.0 / std::numbers::pi) << "\n";
  } else {
    o << "  beam: adjacency\n";
  }
  if (s.generated_flows) {
    const auto& g = *s.generated_flows;
    o << "flows:\n  generate:\n"
      << "    count: " << g.count << "\n"
      << "    heavy_weight: " << num(g.heavy_weight) << "\n"
      << "    force_heavy: " << (g.force_heavy ? "true" : "false") << "\n";
  } else {
    o << "flows:\n";
    for (const auto& f : s.flows) {
      o << "  - {src: " << quote(f.src) << ", dst: " << quote(f.dst) << ", demand: " << f.demand
        << ", weight: " << num(f.weight) << ", multipath: " << (f.multipath ? "true" : "false") << "}\n";
    }
  }
  if (s.traffic || !s.replay_file.empty()) {
    const TrafficSpec t = s.traffic.value_or(TrafficSpec{});
    o << "traffic:\n";
    if (const auto* ipp = std::get_if<IppMode>(&t.mode)) {
      o << "  mode: ipp\n  ipp_ratio: " << num(ipp->ratio) << "\n  ipp_p1: " << num(ipp->p1) << "\n";
    } else {
      o << "  mode: poisson\n";
    }
    o << "  load: " << num(t.load) << "\n  packet_bytes: " << t.packet_bytes << "\n";
    if (!s.replay_file.empty()) o << "  replay: " << quote(s.replay_file) << "\n";
  }
  o << "mpmh:\n"
    << "  epsilon: " << num(s.mpmh.epsilon) << "\n"
    << "  h_max: " << s.mpmh.h_max << "\n"
    << "  frame_slot_cap: " << s.mpmh.frame_slot_cap << "\n";
  o << "sim:\n"
    << "  length_slots: " << s.sim.length_slots << "\n"
    << "  delay_threshold: " << s.sim.delay_threshold << "\n"
    << "  poll_slots: " << s.sim.poll_slots << "\n"
    << "  sched_slots: " << s.sim.sched_slots << "\n"
    << "  push_slots: " << s.sim.push_slots << "\n"
    << "  ema_alpha: " << num(s.sim.ema_alpha) << "\n"
    << "  initial_packets_max: " << s.sim.initial_packets_max << "\n"
    << "  admission: " << to_string(s.sim.admission) << "\n"
    << "  focus_flow: " << s.focus_flow << "\n";
  o << "run:\n"
    << "  seeds: " << list(s.seeds) << "\n"
    << "  schedulers: " << list(s.schedulers) << "\n";
  if (!s.loads.empty()) o << "  loads: " << list(s.loads) << "\n";
  return o.str();
}

Instance instantiate(const Scenario& s) {
  const std::vector<int> alphabet = default_alphabet(s);
  if (!s.generated) {
    Topology t(s.nodes, alphabet);
    for (std::size_t i = 0; i < s.links.size(); ++i) {
      const auto& l = s.links[i];
      const std::string where = "topology.links[" + std::to_string(i) + "]";
      t.set_rate({resolve(t, l.from, where + ".from"), resolve(t, l.to, where + ".to")}, l.rate);
    }
    for (const auto& link : s.links) {
      if (!s.radio.has_rate(link.rate) && link.rate != 0) {
        throw ConfigError("topology.links: rate " + std::to_string(link.rate) + " has no rate_table entry");
      }
    }
    std::mt19937_64 rng(0);
    FlowDraw d = draw_flows(s, t, rng);
    return {assemble(s, std::move(t), std::move(d)), 0};
  }

  const GeneratedTopology& g = *s.generated;
  std::mt19937_64 rng(g.seed);
  RateQuantizer q = SnrQuantizer{};
  if (g.quantizer == "distance") q = DistanceQuantizer::for_arena(g.side_m);
  for (int attempt = 0; attempt < g.max_redraws; ++attempt) {
    std::vector<Node> nodes = uniform_nodes(g.count, g.side_m, rng);
    Topology t = rate_from_distance(s.radio, Topology(nodes, alphabet), q);
    FlowDraw d = draw_flows(s, t, rng);
    if (!acceptable(s, t, d)) continue;
    return {assemble(s, std::move(t), std::move(d)), attempt};
  }
  throw ConfigError("topology.generate: no acceptable draw in " + std::to_string(g.max_redraws) +
                    " attempts");
}

std::vector<Flow> static_flows(const Scenario& s, const Topology& topology) {
  std::vector<Flow> out;
  for (std::size_t i = 0; i < s.flows.size(); ++i) {
    const auto& f = s.flows[i];
    const std::string where = "flows[" + std::to_string(i) + "]";
    out.push_back({static_cast<int>(i), resolve(topology, f.src, where), resolve(topology, f.dst, where),
                   f.demand, f.weight});
  }
  return out;
}

}  // namespace mpmh
