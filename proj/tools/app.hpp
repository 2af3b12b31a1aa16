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

#ifndef MPMH_TOOLS_APP_HPP_
#define MPMH_TOOLS_APP_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpmh::app {

struct CommandOptions {
  std::string command = "run";  // run | sweep
  std::string scenario;         // built-in name or file
  std::vector<std::string> schedulers;
  std::vector<std::uint64_t> seeds;
  std::vector<double> loads;
  bool oracle = false;
  bool validate_only = false;
  std::optional<std::filesystem::path> out_root;
  int workers = 1;
};

struct CommandResult {
  int exit_code = 0;
  std::filesystem::path out_dir;
  std::string summary;
};

// Executes one command and writes its artifacts. Configuration errors throw
// mpmh::ConfigError; failed simulation cells give a nonzero exit code.
CommandResult run_command(const CommandOptions& options, std::ostream& log);

// "N" -> 1..N, or an explicit comma list.
std::vector<std::uint64_t> parse_seeds(const std::string& text);
// "a..b" (integers), or a comma list.
std::vector<double> parse_loads(const std::string& text);
// Comma list.
std::vector<std::string> split_list(const std::string& text);

std::uint64_t fnv1a(std::string_view data);

// --out, else $MPMH_OUT_ROOT, else ./mpmh-out.
std::filesystem::path output_root(const CommandOptions& options);

}  // namespace mpmh::app

#endif  // MPMH_TOOLS_APP_HPP_
