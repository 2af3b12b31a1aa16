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

#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mpmh/error.hpp"

namespace mpmh::app {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << text;
}

std::string runs_csv(std::span<const SweepCell> cells) {
  std::ostringstream o;
  o << "scheduler,load,seed,avg_delay,throughput,flow_delay,flow_throughput,frames,mean_frame_slots\n";
  for (const SweepCell& c : cells) {
    if (!c.report) continue;
    const MetricsReport& r = *c.report;
    o << to_string(c.scheduler) << ',' << fmt(c.load) << ',' << c.seed << ',' << fmt(r.avg_delay) << ','
      << r.throughput << ',' << fmt(r.flow_delay) << ',' << r.flow_throughput << ',' << r.frames << ','
      << fmt(r.mean_frame_slots) << '\n';
  }
  return o.str();
}

std::string aggregate_csv(std::span<const SweepAggregate> aggs) {
  std::ostringstream o;
  o << "scheduler,load,runs,failures,avg_delay_mean,avg_delay_sd,throughput_mean,throughput_sd,"
       "flow_delay_mean,flow_delay_sd,flow_throughput_mean,flow_throughput_sd,frames_mean,"
       "mean_frame_slots_mean\n";
  for (const SweepAggregate& a : aggs) {
    o << to_string(a.scheduler) << ',' << fmt(a.load) << ',' << a.runs << ',' << a.failures << ','
      << fmt(a.avg_delay_mean) << ',' << fmt(a.avg_delay_sd) << ',' << fmt(a.throughput_mean) << ','
      << fmt(a.throughput_sd) << ',' << fmt(a.flow_delay_mean) << ',' << fmt(a.flow_delay_sd) << ','
      << fmt(a.flow_throughput_mean) << ',' << fmt(a.flow_throughput_sd) << ',' << fmt(a.frames_mean)
      << ',' << fmt(a.mean_frame_slots_mean) << '\n';
  }
  return o.str();
}

const char* plot_file_name(PlotMetric metric) {
  switch (metric) {
    case PlotMetric::AvgDelay: return "plot_avg_delay.csv";
    case PlotMetric::Throughput: return "plot_throughput.csv";
    case PlotMetric::FlowDelay: return "plot_flow_delay.csv";
    case PlotMetric::FlowThroughput: return "plot_flow_throughput.csv";
  }
  return "plot.csv";
}

std::string plot_csv(std::span<const SweepAggregate> aggs, PlotMetric metric) {
  std::vector<SchedulerKind> order;
  std::map<double, std::map<SchedulerKind, double>> table;
  for (const SweepAggregate& a : aggs) {
    if (std::find(order.begin(), order.end(), a.scheduler) == order.end()) order.push_back(a.scheduler);
    double v = 0;
    switch (metric) {
      case PlotMetric::AvgDelay: v = a.avg_delay_mean; break;
      case PlotMetric::Throughput: v = a.throughput_mean; break;
      case PlotMetric::FlowDelay: v = a.flow_delay_mean; break;
      case PlotMetric::FlowThroughput: v = a.flow_throughput_mean; break;
    }
    table[a.load][a.scheduler] = v;
  }
  std::ostringstream o;
  o << "load";
  for (SchedulerKind k : order) o << ',' << to_string(k);
  o << '\n';
  for (const auto& [load, row] : table) {
    o << fmt(load);
    for (SchedulerKind k : order) {
      o << ',';
      if (auto it = row.find(k); it != row.end()) o << fmt(it->second);
    }
    o << '\n';
  }
  return o.str();
}

}  // namespace mpmh::app
