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

#include "mpmh/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "mpmh/error.hpp"

namespace mpmh {

double lambda_from_load(double load, double packet_bits, int flow_count,
                        double reference_rate_bps) {
  if (!(load > 0) || !(packet_bits > 0) || flow_count <= 0 || !(reference_rate_bps > 0)) {
    throw DomainError("lambda_from_load: arguments must be positive");
  }
  return load * reference_rate_bps / (packet_bits * flow_count);
}

double load_from_lambda(double lambda_pps, double packet_bits, int flow_count,
                        double reference_rate_bps) {
  return lambda_pps * packet_bits * flow_count / reference_rate_bps;
}

void IppParams::validate() const {
  if (!(lambda1 > 0) || !(lambda2 > 0)) throw ConfigError("ipp: lambda1, lambda2 must be > 0");
  if (p1 < 0 || p2 < 0 || std::abs(p1 + p2 - 1.0) > 1e-12) {
    throw ConfigError("ipp: p1, p2 must be non-negative and sum to 1");
  }
}

IppDerived ipp_params(const IppParams& p) {
  p.validate();
  IppDerived d;
  d.mean_interarrival = p.p1 / p.lambda1 + p.p2 / p.lambda2;
  d.lambda_on_off = p.p1 * p.lambda1 + p.p2 * p.lambda2;
  const double diff = p.lambda1 - p.lambda2;
  d.r1 = p.p1 * p.p2 * diff * diff / d.lambda_on_off;
  d.r2 = p.lambda1 * p.lambda2 / d.lambda_on_off;
  return d;
}

IppParams ipp_for_rate(double lambda, double ratio, double p1) {
  if (!(lambda > 0) || !(ratio > 0) || p1 < 0 || p1 > 1) {
    throw ConfigError("ipp_for_rate: invalid shape");
  }
  IppParams p;
  p.p1 = p1;
  p.p2 = 1.0 - p1;
  p.lambda2 = lambda * (p.p1 / ratio + p.p2);
  p.lambda1 = ratio * p.lambda2;
  return p;
}

void TrafficSpec::validate() const {
  if (!(load > 0)) throw ConfigError("traffic.load must be > 0");
  if (packet_bytes <= 0) throw ConfigError("traffic.packet_bytes must be > 0");
  if (const auto* ipp = std::get_if<IppMode>(&mode)) {
    if (!(ipp->ratio > 0)) throw ConfigError("traffic.ipp.ratio must be > 0");
    if (ipp->p1 < 0 || ipp->p1 > 1) throw ConfigError("traffic.ipp.p1 must lie in [0, 1]");
  }
}

ArrivalSampler::ArrivalSampler(const TrafficMode& mode, double rate_per_slot, std::seed_seq& seed)
    : rng_(seed) {
  if (!(rate_per_slot > 0)) throw DomainError("ArrivalSampler: rate must be > 0");
  if (const auto* m = std::get_if<IppMode>(&mode)) {
    const IppDerived d = ipp_params(ipp_for_rate(rate_per_slot, m->ratio, m->p1));
    if (d.r1 > 0) {
      ipp_ = true;
      rate_ = d.lambda_on_off;
      r1_ = d.r1;
      r2_ = d.r2;
      // Stationary start.
      on_ = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < r2_ / (r1_ + r2_);
      if (on_) {
        on_until_ = std::exponential_distribution<double>(r1_)(rng_);
      } else {
        now_ = std::exponential_distribution<double>(r2_)(rng_);
        on_ = true;
        on_until_ = now_ + std::exponential_distribution<double>(r1_)(rng_);
      }
      return;
    }
  }
  rate_ = rate_per_slot;
}

double ArrivalSampler::next() {
  std::exponential_distribution<double> gap(rate_);
  if (!ipp_) {
    now_ += gap(rng_);
    return now_;
  }
  for (;;) {
    const double t = now_ + gap(rng_);
    if (t < on_until_) {
      now_ = t;
      return now_;
    }
    // OFF period, then a fresh ON period; memorylessness lets us redraw.
    now_ = on_until_ + std::exponential_distribution<double>(r2_)(rng_);
    on_until_ = now_ + std::exponential_distribution<double>(r1_)(rng_);
  }
}

std::vector<ArrivalStream> generate(const TrafficMode& mode, std::span<const double> rates_per_slot,
                                    double horizon_slots, std::uint64_t seed) {
  std::vector<ArrivalStream> out(rates_per_slot.size());
  for (std::size_t v = 0; v < rates_per_slot.size(); ++v) {
    if (!(horizon_slots > 0) || !(rates_per_slot[v] > 0)) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(v), 0x6d706d68u};
    ArrivalSampler sampler(mode, rates_per_slot[v], seq);
    for (double t = sampler.next(); t < horizon_slots; t = sampler.next()) out[v].push_back(t);
  }
  return out;
}

std::vector<double> flow_rates_per_slot(const TrafficSpec& spec, std::span<const double> weights) {
  spec.validate();
  const int count = static_cast<int>(weights.size());
  if (count == 0) return {};
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0)) throw ConfigError("traffic weights must have a positive sum");
  const double lambda = per_slot(lambda_from_load(spec.load, spec.packet_bytes * 8.0, count));
  std::vector<double> out;
  out.reserve(weights.size());
  for (double w : weights) {
    if (w < 0) throw ConfigError("traffic weights must be non-negative");
    out.push_back(lambda * count * w / total);
  }
  return out;
}

std::vector<ArrivalStream> load_replay(const std::filesystem::path& file, int flow_count) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open replay file " + file.string());
  std::vector<ArrivalStream> out(static_cast<std::size_t>(flow_count));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    int flow = 0;
    double slot = 0;
    if (!(ss >> flow)) continue;
    if (!(ss >> slot) || flow < 0 || flow >= flow_count || slot < 0) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": bad replay record");
    }
    out[static_cast<std::size_t>(flow)].push_back(slot);
  }
  for (auto& s : out) std::stable_sort(s.begin(), s.end());
  return out;
}

}  // namespace mpmh
