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

#include "mpmh/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mpmh/error.hpp"

namespace mpmh {

std::vector<RateEntry> default_rate_table() {
  return {{db_to_linear(10.0), 1}, {db_to_linear(16.0), 2}, {db_to_linear(22.0), 3},
          {db_to_linear(28.0), 4}};
}

void RadioModel::validate() const {
  if (!(tx_power_mw > 0)) throw ConfigError("radio.tx_power_mw must be > 0");
  if (!(path_loss_exp > 0)) throw ConfigError("radio.path_loss_exp must be > 0");
  if (!(bandwidth_hz > 0)) throw ConfigError("radio.bandwidth_hz must be > 0");
  if (!(noise_psd_mw_per_hz > 0)) throw ConfigError("radio.noise_psd_mw_per_hz must be > 0");
  if (!(mui_factor >= 0 && mui_factor <= 1)) throw ConfigError("radio.mui_factor must be in [0,1]");
  if (rate_table.empty()) throw ConfigError("radio.rate_table must not be empty");
  for (std::size_t i = 1; i < rate_table.size(); ++i) {
    if (!(rate_table[i].min_sinr_linear > rate_table[i - 1].min_sinr_linear) ||
        rate_table[i].rate <= rate_table[i - 1].rate) {
      throw ConfigError("radio.rate_table must be strictly increasing in sinr and rate");
    }
  }
  if (rate_table.front().rate <= 0) throw ConfigError("radio.rate_table rates must be positive");
  if (const auto* sector = std::get_if<SectorBeam>(&beam_policy)) {
    if (!(sector->beamwidth_rad > 0 && sector->beamwidth_rad <= 2 * std::numbers::pi)) {
      throw ConfigError("radio.beamwidth must be in (0, 2*pi]");
    }
  }
}

double RadioModel::min_sinr(int rate) const {
  for (const RateEntry& e : rate_table) {
    if (e.rate == rate) return e.min_sinr_linear;
  }
  throw ConfigError("rate " + std::to_string(rate) + " has no entry in radio.rate_table");
}

bool RadioModel::has_rate(int rate) const {
  return std::any_of(rate_table.begin(), rate_table.end(),
                     [rate](const RateEntry& e) { return e.rate == rate; });
}

int RadioModel::lowest_rate() const { return rate_table.front().rate; }

double received_power(const RadioModel& model, double dist_m) {
  if (!(dist_m > 0)) throw DomainError("received_power: distance must be positive");
  return model.k0() * model.tx_power_mw * std::pow(dist_m, -model.path_loss_exp);
}

BeamState BeamState::from_links(std::span<const Vec2> positions, std::span<const Link> links) {
  BeamState state(static_cast<int>(positions.size()));
  for (const Link& l : links) {
    const Vec2 p_tx = positions[static_cast<std::size_t>(l.from)];
    const Vec2 p_rx = positions[static_cast<std::size_t>(l.to)];
    state.steer(l.from, p_rx - p_tx);
    state.steer(l.to, p_tx - p_rx);
  }
  return state;
}

void BeamState::steer(NodeId node, Vec2 direction) {
  const double len = norm(direction);
  if (!(len > 0)) throw DomainError("BeamState::steer: zero-length direction");
  beams_.at(static_cast<std::size_t>(node)) = Vec2{direction.x / len, direction.y / len};
}

std::optional<Vec2> BeamState::beam(NodeId node) const {
  return beams_.at(static_cast<std::size_t>(node));
}

namespace {

bool covers(Vec2 beam, Vec2 from, Vec2 to, double half_width) {
  const Vec2 los = to - from;
  const double len = norm(los);
  if (!(len > 0)) return true;
  const double c = std::clamp(dot(beam, los) / len, -1.0, 1.0);
  // Small slack so a beam aimed exactly along the line of sight always counts.
  return std::acos(c) <= half_width + 1e-12;
}

}  // namespace

int beam_indicator(const BeamPolicy& policy, NodeId sender, NodeId receiver,
                   const BeamState& beams, std::span<const Vec2> positions) {
  const auto* sector = std::get_if<SectorBeam>(&policy);
  if (sector == nullptr) return 0;
  const auto tx_beam = beams.beam(sender);
  const auto rx_beam = beams.beam(receiver);
  if (!tx_beam || !rx_beam) return 0;
  const Vec2 p_tx = positions[static_cast<std::size_t>(sender)];
  const Vec2 p_rx = positions[static_cast<std::size_t>(receiver)];
  const double half = sector->beamwidth_rad / 2.0;
  return covers(*tx_beam, p_tx, p_rx, half) && covers(*rx_beam, p_rx, p_tx, half) ? 1 : 0;
}

double sinr(const RadioModel& model, const Link& victim, std::span<const Link> active,
            const BeamState& beams, std::span<const Vec2> positions) {
  const auto pos = [&](NodeId n) { return positions[static_cast<std::size_t>(n)]; };
  const double signal = received_power(model, distance(pos(victim.from), pos(victim.to)));
  double interference = 0.0;
  for (const Link& other : active) {
    if (other == victim) continue;
    if (beam_indicator(model.beam_policy, other.from, victim.to, beams, positions) == 0) continue;
    interference += received_power(model, distance(pos(other.from), pos(victim.to)));
  }
  return signal / (model.noise_mw() + model.mui_factor * interference);
}

bool pairing_feasible(const RadioModel& model, std::span<const ActiveLink> links,
                      const BeamState& beams, std::span<const Vec2> positions) {
  std::vector<Link> active;
  active.reserve(links.size());
  for (const ActiveLink& a : links) active.push_back(a.link);
  for (const ActiveLink& a : links) {
    const double threshold = model.min_sinr(a.rate);
    // The adjacency-only policy models an idealised evaluation setting in
    // which any matching is admissible regardless of link budget.
    if (std::holds_alternative<AdjacencyOnly>(model.beam_policy)) continue;
    if (sinr(model, a.link, active, beams, positions) < threshold) return false;
  }
  return true;
}

bool pairing_feasible(const RadioModel& model, std::span<const ActiveLink> links,
                      std::span<const Vec2> positions) {
  std::vector<Link> active;
  active.reserve(links.size());
  for (const ActiveLink& a : links) active.push_back(a.link);
  return pairing_feasible(model, links, BeamState::from_links(positions, active), positions);
}

}  // namespace mpmh
