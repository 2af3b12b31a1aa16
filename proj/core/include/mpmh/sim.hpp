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

#ifndef MPMH_SIM_HPP_
#define MPMH_SIM_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpmh/network.hpp"
#include "mpmh/radio.hpp"
#include "mpmh/schedule.hpp"
#include "mpmh/scheme.hpp"
#include "mpmh/traffic.hpp"

namespace mpmh {

enum class SchedulerKind { Mpmh, Fdmac, FdmacUr, Oracle };

std::string to_string(SchedulerKind k);
SchedulerKind parse_scheduler(const std::string& name);  // throws ConfigError

// What to do when the frame's schedule exceeds the frame slot cap.
enum class Admission {
  Truncate,      // run the schedule clipped at the cap
  Proportional,  // shrink every flow's snapshot by a common factor until it fits
  Fair,          // serve min(backlog, T) per flow for the largest T that fits
};
std::string to_string(Admission a);
Admission parse_admission(const std::string& name);  // throws ConfigError

struct SimParams {
  std::int64_t length_slots = 50'000;
  std::int64_t delay_threshold = 25'000;
  int poll_slots = 1;
  int sched_slots = 2;
  int push_slots = 1;
  double ema_alpha = 0.1;
  int initial_packets_max = 5;  // each flow starts with U{1..max} packets; 0 disables
  Admission admission = Admission::Proportional;

  int overhead() const { return poll_slots + sched_slots + push_slots; }
  void validate() const;  // throws ConfigError
};

// Everything a run needs besides the scheduler and the seed.
struct SimScenario {
  Topology topology;
  RadioModel radio;
  std::vector<Flow> flows;               // endpoints; demands are filled per frame
  std::vector<double> traffic_weights;   // relative offered load per flow
  TrafficSpec traffic;
  std::vector<ArrivalStream> replay;     // when non-empty, used instead of `traffic`
  MpmhParams mpmh;
  SimParams sim;
  std::vector<int> forced_multipath;     // treated as selected every frame
  int focus_flow = 0;                    // flow whose delay/throughput is reported
};

struct FlowStats {
  std::int64_t arrivals = 0;
  std::int64_t delivered = 0;
  std::int64_t dropped = 0;
  std::int64_t queued = 0;  // still in the system when the run ends
  double delay_sum = 0;
};

struct MetricsReport {
  std::optional<double> avg_delay;  // over delivered packets, slots
  std::int64_t throughput = 0;
  std::optional<double> flow_delay;
  std::int64_t flow_throughput = 0;
  std::int64_t frames = 0;
  double mean_frame_slots = 0;
  std::vector<std::int64_t> frame_slots;
  std::vector<FlowStats> flows;
  std::int64_t clipped_frames = 0;
  std::int64_t admission_rounds = 0;  // replans after shrinking demand to fit the frame cap
  std::int64_t relayed_at_end = 0;    // packets parked at relays when the run ends
  std::int64_t multipath_frames = 0;  // frames in which the focus flow used several paths
};

// Packets (arrival slots) waiting in front of each hop of each path of
// `problem`, FIFO; queues[p][0] holds packets still at the path's first node.
using PathQueues = std::vector<std::vector<std::deque<std::int64_t>>>;

struct Delivery {
  int path = 0;
  std::int64_t arrival = 0;
  std::int64_t slot = 0;
};

struct FrameOutcome {
  std::vector<Delivery> delivered;
  PathQueues leftover;  // per path, packets not delivered this frame
};

// Moves packets hop by hop in pairing order starting at `start_slot`; a hop
// carries at most floor(delta * rate) packets per pairing and a packet counts
// as delivered when its last hop's pairing ends. Throws AccountingError when
// a path's hops appear out of order, or when nothing was clipped and some
// packet is left behind.
FrameOutcome account_frame(const ScheduleProblem& problem, const Schedule& schedule,
                           PathQueues queues, std::int64_t start_slot, bool clipped);

struct RunOptions {
  bool validate = false;  // check every frame's schedule
};

MetricsReport run(const SimScenario& scenario, SchedulerKind scheduler, std::uint64_t seed,
                  const RunOptions& options = {});
MetricsReport run_with_arrivals(const SimScenario& scenario, SchedulerKind scheduler,
                                std::span<const ArrivalStream> arrivals,
                                const RunOptions& options = {});

struct SweepCell {
  SchedulerKind scheduler = SchedulerKind::Mpmh;
  double load = 0;
  std::uint64_t seed = 0;
  std::optional<MetricsReport> report;
  std::string error;
};

struct SweepAggregate {
  SchedulerKind scheduler = SchedulerKind::Mpmh;
  double load = 0;
  int runs = 0;
  int failures = 0;
  // mean, stddev (sample) over successful runs; delays over runs that have one
  double avg_delay_mean = 0, avg_delay_sd = 0;
  double throughput_mean = 0, throughput_sd = 0;
  double flow_delay_mean = 0, flow_delay_sd = 0;
  double flow_throughput_mean = 0, flow_throughput_sd = 0;
  double frames_mean = 0, mean_frame_slots_mean = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // scheduler-major, then load, then seed
  std::vector<SweepAggregate> aggregates;
};

// Cartesian product of independent runs on `workers` threads. A failing cell
// records its error and the sweep continues.
SweepResult sweep(const SimScenario& scenario, std::span<const double> loads,
                  std::span<const SchedulerKind> schedulers, std::span<const std::uint64_t> seeds,
                  int workers = 1, const RunOptions& options = {});

std::vector<SweepAggregate> aggregate(std::span<const SweepCell> cells);

}  // namespace mpmh

#endif  // MPMH_SIM_HPP_
