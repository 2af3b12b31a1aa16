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

#include <CLI11.hpp>

#include <iostream>

#include "app.hpp"
#include "mpmh/error.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Multi-path multi-hop WPAN scheduling: schedules, simulations and sweeps"};
  cli.require_subcommand(1);

  mpmh::app::CommandOptions opt;
  std::string schedulers, seeds, loads, out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario,--scenario", opt.scenario, "Built-in scenario name or scenario file");
    sub->add_option("--scheduler,--schedulers", schedulers, "Comma list of mpmh, fdmac, fdmac-ur, oracle");
    sub->add_option("--seeds", seeds, "Seed count N (seeds 1..N) or comma list");
    sub->add_option("--loads", loads, "Loads as a..b or comma list");
    sub->add_flag("--oracle", opt.oracle, "Also run the exact solver and report the gap");
    sub->add_flag("--validate-only", opt.validate_only, "Check schedules without simulating");
    sub->add_option("--out", out, "Output root (overrides MPMH_OUT_ROOT)");
    sub->add_option("--workers", opt.workers, "Parallel sweep cells")->check(CLI::PositiveNumber);
  };
  CLI::App* run = cli.add_subcommand("run", "Schedule or simulate one scenario");
  CLI::App* sw = cli.add_subcommand("sweep", "Sweep loads x schedulers x seeds");
  add_common(run);
  add_common(sw);

  CLI11_PARSE(cli, argc, argv);
  opt.command = run->parsed() ? "run" : "sweep";
  try {
    if (!schedulers.empty()) opt.schedulers = mpmh::app::split_list(schedulers);
    if (!seeds.empty()) opt.seeds = mpmh::app::parse_seeds(seeds);
    if (!loads.empty()) opt.loads = mpmh::app::parse_loads(loads);
    if (!out.empty()) opt.out_root = out;
    const auto result = mpmh::app::run_command(opt, std::cerr);
    std::cout << result.summary;
    return result.exit_code;
  } catch (const mpmh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
