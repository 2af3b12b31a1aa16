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

#ifndef MPMH_TOOLS_REPORT_HPP_
#define MPMH_TOOLS_REPORT_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "mpmh/sim.hpp"

namespace mpmh::app {

// Fixed six-decimal rendering so CSVs are byte-stable. Absent -> empty field.
std::string fmt(double v);
std::string fmt(const std::optional<double>& v);

void write_text(const std::filesystem::path& file, const std::string& text);

// runs.csv: one row per successful cell.
std::string runs_csv(std::span<const SweepCell> cells);
// aggregate.csv: mean and stddev per (scheduler, load).
std::string aggregate_csv(std::span<const SweepAggregate> aggs);

// One plot-data table: load, then one column per scheduler.
enum class PlotMetric { AvgDelay, Throughput, FlowDelay, FlowThroughput };
std::string plot_csv(std::span<const SweepAggregate> aggs, PlotMetric metric);
const char* plot_file_name(PlotMetric metric);

}  // namespace mpmh::app

#endif  // MPMH_TOOLS_REPORT_HPP_
