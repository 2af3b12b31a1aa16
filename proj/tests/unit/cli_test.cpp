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


#include "app.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mpmh/error.hpp"
#include "report.hpp"

namespace mpmh::app {
namespace {

namespace fs = std::filesystem;

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("mpmh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  CommandResult go(CommandOptions o, const std::string& sub) {
    o.out_root = root_ / sub;
    std::ostringstream log;
    return run_command(o, log);
  }

  fs::path root_;
};

TEST(Parsing, SeedsLoadsLists) {
  EXPECT_EQ(parse_seeds("3"), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(parse_seeds("4,9"), (std::vector<std::uint64_t>{4, 9}));
  EXPECT_EQ(parse_loads("2..4"), (std::vector<double>{2, 3, 4}));
  EXPECT_EQ(parse_loads("0.5,1.5"), (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(split_list("mpmh, fdmac"), (std::vector<std::string>{"mpmh", "fdmac"}));
  EXPECT_THROW(parse_seeds("x"), ConfigError);
  EXPECT_THROW(parse_loads("4..2"), ConfigError);
}

TEST(Parsing, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(Report, FixedPrecision) {
  EXPECT_EQ(fmt(1.0), "1.000000");
  EXPECT_EQ(fmt(std::optional<double>{}), "");
  EXPECT_EQ(fmt(std::optional<double>{2.5}), "2.500000");
}

TEST_F(Cli, Fig1bBaselineTakesEighteenSlots) {
  CommandOptions o;
  o.scenario = "fig1b";
  o.schedulers = {"fdmac"};
  const CommandResult r = go(o, "a");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.summary.find("fdmac: 1 pairings, 18 slots"), std::string::npos) << r.summary;
  EXPECT_TRUE(fs::exists(r.out_dir / "schedule_fdmac.txt"));
  EXPECT_TRUE(fs::exists(r.out_dir / "resolved_scenario.yaml"));
}

TEST_F(Cli, Fig1bHeuristicAndOracle) {
  CommandOptions o;
  o.scenario = "fig1b";
  o.oracle = true;
  const CommandResult r = go(o, "a");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.summary.find("mpmh: 5 pairings, 10 slots"), std::string::npos) << r.summary;
  EXPECT_NE(r.summary.find("heuristic 10 slots vs optimal 9 slots"), std::string::npos) << r.summary;
  EXPECT_NE(r.summary.find("split 3 9 6"), std::string::npos) << r.summary;
}

TEST_F(Cli, SameCommandGivesByteIdenticalArtifacts) {
  CommandOptions o;
  o.command = "sweep";
  o.scenario = "wpan10";
  o.schedulers = {"mpmh", "fdmac"};
  o.seeds = {1, 2};
  o.loads = {1, 3};
  const CommandResult a = go(o, "a");
  o.workers = 2;
  const CommandResult b = go(o, "b");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out_dir.filename(), b.out_dir.filename());
  const auto sa = snapshot(a.out_dir);
  EXPECT_EQ(sa, snapshot(b.out_dir));
  EXPECT_EQ(a.summary, b.summary);
  for (const char* f : {"runs.csv", "aggregate.csv", "summary.txt", "resolved_scenario.yaml"}) {
    EXPECT_TRUE(sa.count(f)) << f;
  }
  o.seeds = {1, 3};
  EXPECT_NE(go(o, "c").out_dir.filename(), a.out_dir.filename());
}

TEST_F(Cli, ValidateOnlyChecksEveryScheduler) {
  CommandOptions o;
  o.scenario = "wpan10";
  o.validate_only = true;
  const CommandResult r = go(o, "a");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.summary.find("violation"), std::string::npos) << r.summary;
}

TEST_F(Cli, ConfigErrorsThrow) {
  CommandOptions o;
  o.scenario = "does-not-exist";
  EXPECT_THROW(go(o, "a"), ConfigError);
  o.scenario = "fig1b";
  o.schedulers = {"tdma"};
  EXPECT_THROW(go(o, "a"), ConfigError);
}

TEST_F(Cli, OutputRootPrecedence) {
  CommandOptions o;
  EXPECT_EQ(output_root(o), fs::path(std::getenv("MPMH_OUT_ROOT") ? std::getenv("MPMH_OUT_ROOT") : "mpmh-out"));
  o.out_root = root_;
  EXPECT_EQ(output_root(o), root_);
}

#ifdef MPMH_CLI_PATH
TEST_F(Cli, BinaryRunsAndIsDeterministic) {
  fs::create_directories(root_);
  const fs::path out1 = root_ / "stdout1.txt";
  const fs::path out2 = root_ / "stdout2.txt";
  const std::string base = std::string(MPMH_CLI_PATH) + " run fig1b --scheduler mpmh,fdmac --out " + (root_ / "x").string();
  ASSERT_EQ(std::system((base + " > " + out1.string() + " 2>/dev/null").c_str()), 0);
  ASSERT_EQ(std::system((base + " > " + out2.string() + " 2>/dev/null").c_str()), 0);
  const auto s = snapshot(root_);
  EXPECT_EQ(s.at("stdout1.txt"), s.at("stdout2.txt"));
  EXPECT_NE(s.at("stdout1.txt").find("18 slots"), std::string::npos);
  const std::string bad = std::string(MPMH_CLI_PATH) + " run no-such-scenario 2>/dev/null >/dev/null";
  const int rc = std::system(bad.c_str());
  EXPECT_TRUE(WIFEXITED(rc));
  EXPECT_EQ(WEXITSTATUS(rc), 2);
}
#endif

}  // namespace
}  // namespace mpmh::app
