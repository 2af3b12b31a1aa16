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

#ifndef MPMH_TRAFFIC_HPP_
#define MPMH_TRAFFIC_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace mpmh {

inline constexpr double kSlotSeconds = 5e-6;
inline constexpr double kReferenceRateBps = 2e9;

// Per-flow arrival rate in packets per second for a normalized load.
double lambda_from_load(double load, double packet_bits, int flow_count,
                        double reference_rate_bps = kReferenceRateBps);
// Inverse of lambda_from_load.
double load_from_lambda(double lambda_pps, double packet_bits, int flow_count,
                        double reference_rate_bps = kReferenceRateBps);

inline double per_slot(double rate_per_second) { return rate_per_second * kSlotSeconds; }

// Hyper-exponential inter-arrival shape.
struct IppParams {
  double lambda1 = 0;
  double lambda2 = 0;
  double p1 = 0.5;
  double p2 = 0.5;

  void validate() const;  // throws ConfigError
};

// Equivalent ON/OFF process: Poisson at lambda_on_off while ON, leaving ON at
// rate r1 and OFF at rate r2.
struct IppDerived {
  double lambda_on_off = 0;
  double r1 = 0;
  double r2 = 0;
  double mean_interarrival = 0;
};
IppDerived ipp_params(const IppParams& p);

// Shape lambda1 = ratio * lambda2 with the given p1, scaled so the mean
// inter-arrival time is 1 / lambda.
IppParams ipp_for_rate(double lambda, double ratio = 4.0, double p1 = 0.5);

struct PoissonMode {};
struct IppMode {
  double ratio = 4.0;  // lambda1 / lambda2
  double p1 = 0.5;
};
using TrafficMode = std::variant<PoissonMode, IppMode>;

struct TrafficSpec {
  TrafficMode mode = PoissonMode{};
  int packet_bytes = 1000;
  double load = 1.0;

  void validate() const;  // throws ConfigError
};

// Arrival instants in slots (real-valued, non-decreasing) for one flow.
using ArrivalStream = std::vector<double>;

// One stream per entry of `rates_per_slot`. Stream v is seeded from
// (seed, v) so streams are independent and individually reproducible.
std::vector<ArrivalStream> generate(const TrafficMode& mode, std::span<const double> rates_per_slot,
                                    double horizon_slots, std::uint64_t seed);

// Convenience: load -> per-flow rates, flows weighted by `weights` (the
// aggregate offered load is unchanged).
std::vector<double> flow_rates_per_slot(const TrafficSpec& spec, std::span<const double> weights);

// Streaming sampler behind `generate`.
class ArrivalSampler {
 public:
  ArrivalSampler(const TrafficMode& mode, double rate_per_slot, std::seed_seq& seed);
  double next();  // next arrival instant

 private:
  bool ipp_ = false;
  double rate_ = 0;  // Poisson rate, or lambda_on_off
  double r1_ = 0;
  double r2_ = 0;
  bool on_ = true;
  double on_until_ = 0;
  double now_ = 0;
  std::mt19937_64 rng_;
};

// Replay: one "flow_id slot" pair per line; '#' starts a comment.
std::vector<ArrivalStream> load_replay(const std::filesystem::path& file, int flow_count);

}  // namespace mpmh

#endif  // MPMH_TRAFFIC_HPP_
