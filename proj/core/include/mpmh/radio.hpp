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

#ifndef MPMH_RADIO_HPP_
#define MPMH_RADIO_HPP_

// Directional 60 GHz link budget: path loss, cross-link interference, SINR
// and the concurrent-transmission test for one pairing.
//
// All power quantities are linear (mW); dB only appears in the
// configuration-facing fields (`ref_loss_db`) and the conversion helpers.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mpmh/link.hpp"

namespace mpmh {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct RateEntry {
  double min_sinr_linear = 0.0;
  int rate = 0;  // packets per slot
};

// f = 0 for every non-adjacent pair: the evaluation-section assumption that
// any matching may transmit concurrently.
struct AdjacencyOnly {
  friend bool operator==(AdjacencyOnly, AdjacencyOnly) = default;
};

// Ideal flat-top sector antenna of the given full beamwidth.
struct SectorBeam {
  double beamwidth_rad = 0.0;
  friend bool operator==(SectorBeam, SectorBeam) = default;
};

using BeamPolicy = std::variant<AdjacencyOnly, SectorBeam>;

// Four rates {1,2,3,4} pkts/slot, thresholds 10/16/22/28 dB.
std::vector<RateEntry> default_rate_table();

struct RadioModel {
  double tx_power_mw = 1.0;
  double ref_loss_db = -41.0;
  double path_loss_exp = 2.0;
  double mui_factor = 1.0;
  double bandwidth_hz = 2.16e9;
  double noise_psd_mw_per_hz = 3.981071705534973e-18;  // -174 dBm/Hz
  std::vector<RateEntry> rate_table = default_rate_table();
  BeamPolicy beam_policy = AdjacencyOnly{};

  // Throws ConfigError on any violated invariant.
  void validate() const;

  double k0() const { return db_to_linear(ref_loss_db); }
  double noise_mw() const { return bandwidth_hz * noise_psd_mw_per_hz; }

  // MS(c). Throws ConfigError when `rate` has no table entry.
  double min_sinr(int rate) const;
  bool has_rate(int rate) const;
  int lowest_rate() const;
};

// k0 * Pt * d^-gamma. Throws DomainError for d <= 0.
double received_power(const RadioModel& model, double dist_m);

// Per-node beam direction for one pairing; unset nodes are idle.
class BeamState {
 public:
  explicit BeamState(int node_count) : beams_(static_cast<std::size_t>(node_count)) {}

  // Every sender steers at its receiver and vice versa.
  static BeamState from_links(std::span<const Vec2> positions, std::span<const Link> links);

  void steer(NodeId node, Vec2 direction);
  std::optional<Vec2> beam(NodeId node) const;

 private:
  std::vector<std::optional<Vec2>> beams_;
};

// f_{s_i, r_j}: 1 iff the interferer's sender and the victim's receiver have
// their beams on each other.
int beam_indicator(const BeamPolicy& policy, NodeId sender, NodeId receiver,
                   const BeamState& beams, std::span<const Vec2> positions);

// SINR at the victim's receiver with every other link of `active` transmitting.
double sinr(const RadioModel& model, const Link& victim, std::span<const Link> active,
            const BeamState& beams, std::span<const Vec2> positions);

struct ActiveLink {
  Link link;
  int rate = 0;
};

// Every member's SINR reaches MS(rate). Members must be pairwise non-adjacent.
bool pairing_feasible(const RadioModel& model, std::span<const ActiveLink> links,
                      const BeamState& beams, std::span<const Vec2> positions);
bool pairing_feasible(const RadioModel& model, std::span<const ActiveLink> links,
                      std::span<const Vec2> positions);

}  // namespace mpmh

#endif  // MPMH_RADIO_HPP_
