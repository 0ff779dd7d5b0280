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

// Command-line front end. Exit codes: 0 success, 2 usage or configuration
// error, 3 precondition violation reported by the library. Every failure
// writes one line "error: <code>: <message>" to the error stream.

#ifndef PLATOON_CLI_APP_HPP
#define PLATOON_CLI_APP_HPP

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "platoon/cli/commands.hpp"
#include "platoon/cli/config.hpp"
#include "platoon/cli/csv.hpp"
#include "platoon/error.hpp"

namespace platoon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecondition = 3;

namespace detail {

inline std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace detail

/// Runs the CLI on `args` (program name excluded).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed-energy truck platooning benefit allocation", "platoon"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig flags;
  std::string config_path;
  app.add_option("--epsilon-f", flags.epsilon_f, "fuel-powered follower saving (EUR/km)");
  app.add_option("--epsilon-e", flags.epsilon_e, "electric follower saving (EUR/km)");
  app.add_option("--distance", flags.distance, "trip distance (km)");
  app.add_option("--ne", flags.n_e, "number of electric trucks");
  app.add_option("--nf", flags.n_f, "number of fuel-powered trucks");
  app.add_option("--max-platoon-size", flags.max_platoon_size, "platoon size limit M");
  app.add_option("--xi", flags.xi, "leader share of the stable allocation");
  app.add_option("--out", flags.output_path, "write output to this file");
  app.add_option("--config", config_path, "key = value config file (flags override it)");

  auto* value_cmd = app.add_subcommand("value", "coalition value and optimal leader");
  auto* alloc_cmd = app.add_subcommand("allocate", "payoff allocation with core report");
  std::string scheme_name = "shapley";
  alloc_cmd->add_option("--scheme", scheme_name, "stable | shapley | even-split | deviation-min");
  auto* table_cmd = app.add_subcommand("table1", "all coalition structures and their value");
  auto* sweep_cmd = app.add_subcommand("sweep", "figure sweeps as CSV");
  std::string sweep_name;
  SweepOptions sweep_opt;
  sweep_cmd->add_option("kind", sweep_name, "fig2 | fig3 | fig5 | fig6")->required();
  sweep_cmd->add_option("--xi-min", sweep_opt.xi_min, "first xi grid point");
  sweep_cmd->add_option("--xi-max", sweep_opt.xi_max, "last xi grid point (fig2, fig3)");
  sweep_cmd->add_option("--xi-step", sweep_opt.xi_step, "xi grid step (fig2, fig3)");
  sweep_cmd->add_option("--ratio-step", sweep_opt.ratio_step, "ratio grid step (fig5)");
  sweep_cmd->add_option("--points", sweep_opt.points, "xi grid size (fig6)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << detail::one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    RunConfig raw = flags;
    if (!config_path.empty()) raw = merge(load_config_file(config_path), flags);

    std::ofstream file;
    std::ostream* sink = &out;
    auto open_sink = [&](const std::optional<std::string>& path) {
      if (!path || path->empty()) return;
      file.open(*path);
      if (!file) throw ConfigError("cannot open output file '" + *path + "'");
      sink = &file;
    };

    if (*sweep_cmd) {
      const SweepKind kind = parse_sweep_kind(sweep_name);
      const CsvTable table = sweep_csv(kind, raw, sweep_opt);
      open_sink(raw.output_path);
      write_csv(*sink, table);
    } else {
      const ResolvedConfig cfg = resolve(raw);
      if (*value_cmd) {
        open_sink(cfg.output_path);
        cmd_value(cfg, *sink);
      } else if (*alloc_cmd) {
        const AllocScheme scheme = parse_scheme(scheme_name);
        open_sink(cfg.output_path);
        cmd_allocate(cfg, scheme, *sink);
      } else if (*table_cmd) {
        const CsvTable table = table1_csv(cfg);
        open_sink(cfg.output_path);
        write_csv(*sink, table);
      }
    }
  } catch (const ConfigError& e) {
    err << "error: config: " << detail::one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const GameError& e) {
    err << "error: " << to_string(e.code()) << ": " << detail::one_line(e.what()) << '\n';
    return kExitPrecondition;
  }
  return kExitOk;
}

}  // namespace platoon::cli

#endif  // PLATOON_CLI_APP_HPP
