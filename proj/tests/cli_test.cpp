/*
 * Copyright 2026 The platoon-game Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "platoon/cli/app.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace platoon::cli {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(Config, ParsesKeysAndComments) {
  const RunConfig cfg = parse_config_text(
      "# comment\n\nepsilon_f = 0.1\n epsilon_e=0.05 \nn_e = 3\nn_f = 4\nxi = 0.2\n"
      "distance = 100\nmax_platoon_size = 12\noutput_path = out.csv\n");
  EXPECT_EQ(cfg.epsilon_f, 0.1);
  EXPECT_EQ(cfg.epsilon_e, 0.05);
  EXPECT_EQ(cfg.n_e, 3);
  EXPECT_EQ(cfg.n_f, 4);
  EXPECT_EQ(cfg.xi, 0.2);
  EXPECT_EQ(cfg.distance, 100.0);
  EXPECT_EQ(cfg.max_platoon_size, 12);
  EXPECT_EQ(cfg.output_path, "out.csv");
}

TEST(Config, RejectsUnknownRepeatedAndMalformed) {
  EXPECT_THROW(parse_config_text("speed = 80\n"), ConfigError);
  EXPECT_THROW(parse_config_text("n_e = 1\nn_e = 2\n"), ConfigError);
  EXPECT_THROW(parse_config_text("n_e 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("n_e = two\n"), ConfigError);
  EXPECT_THROW(parse_config_text("epsilon_f = 0.1x\n"), ConfigError);
}

TEST(Config, ResolveValidatesFields) {
  RunConfig cfg;
  cfg.epsilon_f = -1.0;
  EXPECT_THROW(resolve(cfg), ConfigError);
  cfg = {};
  cfg.n_e = 10;
  cfg.n_f = 10;
  EXPECT_THROW(resolve(cfg), ConfigError);
  cfg = {};
  cfg.n_f = -1;
  EXPECT_THROW(resolve(cfg), ConfigError);
  const ResolvedConfig ok = resolve({});
  EXPECT_EQ(ok.composition, (Composition{2, 3}));
  EXPECT_DOUBLE_EQ(ok.params.distance, 300.0);
}

TEST(Config, FlagsOverrideFile) {
  const auto path = temp_file("platoon_cfg_override.cfg", "n_e = 0\nn_f = 3\nepsilon_f = 0.1\n");
  const CliResult r = run({"value", "--config", path.string(), "--nf", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "value=90.00 leader=FPT")) << r.out;
}

TEST(ValueCommand, ReferenceOutputs) {
  EXPECT_TRUE(contains(run({"value"}).out, "value=77.40 leader=ET"));
  EXPECT_TRUE(contains(run({"value", "--ne", "0", "--nf", "1"}).out, "value=0.00"));
  EXPECT_TRUE(contains(run({"value", "--ne", "1", "--nf", "0"}).out, "value=0.00 leader=ET"));
  EXPECT_TRUE(contains(run({"value", "--ne", "0", "--nf", "0"}).out, "leader=none"));
}

TEST(AllocateCommand, ShapleyDefaults) {
  const CliResult r = run({"allocate", "--scheme", "shapley"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* line : {"truck=0 type=ET payoff=13.50", "truck=1 type=ET payoff=13.50",
                           "truck=2 type=FPT payoff=16.80", "truck=4 type=FPT payoff=16.80",
                           "core=true", "stability_probability=1.000000",
                           "shapley_ratio_condition=true", "shapley_core_condition=true"}) {
    EXPECT_TRUE(contains(r.out, line)) << line << "\n" << r.out;
  }
}

TEST(AllocateCommand, StableBeyondBoundReportsBlocking) {
  const CliResult r = run({"allocate", "--scheme", "stable", "--xi", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "core=false"));
  EXPECT_TRUE(contains(r.out, "xi_within_bound=false"));
  EXPECT_TRUE(contains(r.out, "blocking n_e="));
}

TEST(AllocateCommand, StableDefaultsToBound) {
  const CliResult r = run({"allocate", "--scheme", "stable"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "xi=0.186047"));
  EXPECT_TRUE(contains(r.out, "core=true"));
}

TEST(AllocateCommand, EvenSplitAndDeviationMin) {
  EXPECT_TRUE(contains(run({"allocate", "--scheme", "even-split"}).out, "payoff=15.48"));
  const CliResult dm = run({"allocate", "--scheme", "deviation-min", "--epsilon-f", "0.72", "--ne", "1",
                      "--nf", "14"});
  ASSERT_EQ(dm.code, 0) << dm.err;
  EXPECT_TRUE(contains(dm.out, "xi=0.004762"));
  EXPECT_TRUE(contains(dm.out, "core=true"));
  EXPECT_TRUE(contains(dm.out, "delta=0.123810"));
}

TEST(AllocateCommand, ErrorPaths) {
  const CliResult holds = run({"allocate", "--scheme", "deviation-min"});
  EXPECT_EQ(holds.code, kExitPrecondition);
  EXPECT_TRUE(contains(holds.err, "condition_holds"));
  EXPECT_TRUE(contains(holds.err, "use shapley"));

  const CliResult bad = run({"allocate", "--scheme", "nucleolus"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_EQ(std::count(bad.err.begin(), bad.err.end(), '\n'), 1);

  EXPECT_EQ(run({"allocate", "--ne", "1", "--nf", "0"}).code, kExitPrecondition);
  EXPECT_EQ(run({"allocate", "--scheme", "stable", "--xi", "1.5"}).code, kExitPrecondition);
  EXPECT_EQ(run({"allocate", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
}

TEST(Table1Command, ReferenceFleet) {
  const CliResult r = run({"table1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 17u);
  EXPECT_EQ(lines[0], "case_index,structure,total_benefit");
  EXPECT_EQ(lines[1], "1,(EEDDD),77.40");
  EXPECT_EQ(lines[16], "16,\"(E),(E),(D),(D),(D)\",0.00");
}

TEST(Table1Command, SmallFleets) {
  const auto two = data_lines(run({"table1", "--ne", "1", "--nf", "1"}).out);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[1], "1,(ED),21.00");
  EXPECT_EQ(two[2], "2,\"(E),(D)\",0.00");
  EXPECT_EQ(data_lines(run({"table1", "--ne", "2", "--nf", "2"}).out).size(), 10u);
  EXPECT_EQ(run({"table1", "--ne", "6", "--nf", "6"}).code, kExitPrecondition);
}

TEST(SweepCommand, UnknownKind) {
  const CliResult r = run({"sweep", "fig4"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(contains(r.err, "error: config:"));
}

TEST(SweepCommand, Deterministic) {
  for (const char* kind : {"fig2", "fig3", "fig5", "fig6"}) {
    const CliResult a = run({"sweep", kind});
    const CliResult b = run({"sweep", kind});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out[0], '#');
  }
}

TEST(SweepCommand, GridSizes) {
  // 14 mixed compositions x 30 xi points
  EXPECT_EQ(data_lines(run({"sweep", "fig2"}).out).size(), 1u + 14u * 30u);
  // N = 2..15
  EXPECT_EQ(data_lines(run({"sweep", "fig3"}).out).size(), 1u + 14u * 30u);
  EXPECT_EQ(data_lines(run({"sweep", "fig5"}).out).size(), 1u + 14u * 99u);
  EXPECT_EQ(data_lines(run({"sweep", "fig6"}).out).size(), 1u + 14u * 60u);
  EXPECT_EQ(data_lines(run({"sweep", "fig2", "--xi-step", "0.05"}).out).size(), 1u + 14u * 3u);
}

TEST(SweepCommand, Fig6SkipsCertifiedCompositions) {
  const CliResult r = run({"sweep", "fig6", "--epsilon-f", "0.07"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "skipped"));
}

TEST(Output, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "platoon_table1_out.csv";
  std::filesystem::remove(path);
  const CliResult r = run({"table1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str(), run({"table1"}).out);
}

int exit_status(const std::string& cmd) {
  const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

TEST(Binary, ExitCodes) {
  const std::string bin = PLATOON_CLI_PATH;
  EXPECT_EQ(exit_status(bin + " value"), 0);
  EXPECT_EQ(exit_status(bin + " --help"), 0);
  EXPECT_EQ(exit_status(bin + " value --epsilon-f -1"), 2);
  EXPECT_EQ(exit_status(bin + " sweep nonsense"), 2);
  EXPECT_EQ(exit_status(bin + " allocate --scheme deviation-min"), 3);
}

}  // namespace
}  // namespace platoon::cli
