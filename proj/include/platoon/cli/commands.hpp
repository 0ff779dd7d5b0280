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

#ifndef PLATOON_CLI_COMMANDS_HPP
#define PLATOON_CLI_COMMANDS_HPP

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "platoon/allocation.hpp"
#include "platoon/cli/config.hpp"
#include "platoon/cli/csv.hpp"
#include "platoon/error.hpp"
#include "platoon/fairness.hpp"
#include "platoon/game.hpp"
#include "platoon/stability.hpp"

namespace platoon::cli {

inline void cmd_value(const ResolvedConfig& cfg, std::ostream& out) {
  const Composition comp = cfg.composition;
  const double value = coalition_value(comp, cfg.params);
  const auto leader = optimal_leader_type(comp);
  const std::string leader_name = leader ? std::string(short_name(*leader)) : "none";
  out << "# coalition n_e=" << comp.n_e << " n_f=" << comp.n_f << ": benefit "
      << money(value) << " EUR over " << money(cfg.params.distance) << " km, leader "
      << leader_name << '\n';
  out << "value=" << money(value) << " leader=" << leader_name << '\n';
}

enum class AllocScheme { kStable, kShapley, kEvenSplit, kDeviationMin };

inline AllocScheme parse_scheme(const std::string& name) {
  if (name == "stable") return AllocScheme::kStable;
  if (name == "shapley") return AllocScheme::kShapley;
  if (name == "even-split") return AllocScheme::kEvenSplit;
  if (name == "deviation-min") return AllocScheme::kDeviationMin;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected stable, shapley, even-split, deviation-min)");
}

inline void print_core_report(const CoreReport& report, std::ostream& out) {
  out << "core=" << (report.is_member ? "true" : "false") << '\n';
  out << "stability_probability=" << scalar(report.stability_probability) << '\n';
  out << "violating_subsets=" << report.violating_subsets << '/'
      << report.candidate_subsets << '\n';
  for (const auto& b : report.blocking) {
    out << "blocking n_e=" << b.composition.n_e << " n_f=" << b.composition.n_f
        << " count=" << b.count << '\n';
  }
}

inline void cmd_allocate(const ResolvedConfig& cfg, AllocScheme scheme, std::ostream& out) {
  const Fleet fleet = Fleet::from_composition(cfg.composition);
  const SavingsParams& params = cfg.params;
  require_grand_coalition(fleet, params);

  Allocation alloc;
  std::optional<double> shown_xi;
  switch (scheme) {
    case AllocScheme::kStable: {
      const double xi = cfg.xi ? *cfg.xi : xi_upper_bound(fleet.composition(), params).upper;
      alloc = stable_allocation(fleet, params, xi);
      shown_xi = xi;
      break;
    }
    case AllocScheme::kShapley: alloc = shapley_allocation(fleet, params); break;
    case AllocScheme::kEvenSplit: alloc = even_split(fleet, params); break;
    case AllocScheme::kDeviationMin: {
      auto result = deviation_minimizing_allocation(fleet, params);
      alloc = std::move(result.allocation);
      shown_xi = result.xi_star;
      break;
    }
  }

  out << "scheme=" << alloc.scheme.label() << '\n';
  if (shown_xi) out << "xi=" << scalar(*shown_xi) << '\n';
  if (alloc.xi_within_bound) {
    out << "xi_bound=" << scalar(xi_upper_bound(fleet.composition(), params).upper) << '\n';
    out << "xi_within_bound=" << (*alloc.xi_within_bound ? "true" : "false") << '\n';
  }
  out << "leader=" << alloc.leader_id << '\n';
  for (std::size_t id = 0; id < fleet.size(); ++id) {
    out << "truck=" << id << " type=" << short_name(fleet.type(id))
        << " payoff=" << money(alloc.payoffs[id]) << '\n';
  }
  out << "total=" << money(alloc.total()) << '\n';
  print_core_report(in_core(alloc, fleet, params), out);

  const Composition comp = fleet.composition();
  if (comp.mixed() && (scheme == AllocScheme::kShapley || scheme == AllocScheme::kDeviationMin)) {
    out << "shapley_ratio_condition="
        << (shapley_ratio_condition(comp, params) ? "true" : "false") << '\n';
    out << "shapley_core_condition="
        << (shapley_core_condition(comp, params) ? "true" : "false") << '\n';
  }
  if (scheme == AllocScheme::kDeviationMin) {
    out << "delta=" << scalar(mean_relative_deviation(alloc, shapley_allocation(fleet, params)))
        << '\n';
  }
}

inline constexpr int kTable1MaxTrucks = 10;

inline CsvTable table1_csv(const ResolvedConfig& cfg) {
  const Composition comp = cfg.composition;
  if (comp.total() > kTable1MaxTrucks) {
    fail(ErrorCode::kTooManyStructures, "table1 is limited to 10 trucks");
  }
  CsvTable table;
  table.comments = {
      "coalition structures of n_e=" + std::to_string(comp.n_e) +
          " electric (E) and n_f=" + std::to_string(comp.n_f) + " fuel-powered (D) trucks",
      "columns: case_index (1-based), structure (platoons in block notation), "
      "total_benefit (EUR)"};
  table.header = {"case_index", "structure", "total_benefit"};
  const auto structures = enumerate_type_structures(comp);
  for (std::size_t k = 0; k < structures.size(); ++k) {
    table.rows.push_back({std::to_string(k + 1), to_notation(structures[k]),
                          money(type_structure_value(structures[k], cfg.params))});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepKind { kFig2, kFig3, kFig5, kFig6 };

inline SweepKind parse_sweep_kind(const std::string& name) {
  if (name == "fig2") return SweepKind::kFig2;
  if (name == "fig3") return SweepKind::kFig3;
  if (name == "fig5") return SweepKind::kFig5;
  if (name == "fig6") return SweepKind::kFig6;
  throw ConfigError("unknown sweep kind '" + name + "' (expected fig2, fig3, fig5, fig6)");
}

/// Grid settings; unset fields take the per-kind defaults.
struct SweepOptions {
  std::optional<double> xi_min;  // fig2/fig3: 0.005, fig6: 0.002
  double xi_max = 0.15;
  double xi_step = 0.005;
  double ratio_step = 0.01;
  std::size_t points = 60;  // fig6 grid size
};

inline constexpr double kFig6EpsilonF = 0.72;

/// start, start + step, ... up to stop (inclusive within a small slack).
inline std::vector<double> arithmetic_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(start > 0.0) || stop < start) {
    throw ConfigError("grid needs 0 < start <= stop and step > 0");
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > stop + 1e-12) break;
    grid.push_back(v);
  }
  return grid;
}

namespace detail {

inline void stability_rows(CsvTable& table, const Fleet& fleet, const SavingsParams& params,
                           const std::vector<double>& grid, bool with_split) {
  const Composition comp = fleet.composition();
  const double bound = xi_upper_bound(comp, params).upper;
  for (double xi : grid) {
    const Allocation x = stable_allocation(fleet, params, xi);
    const double p = stability_probability(x, fleet, params);
    std::vector<std::string> row{scalar(params.epsilon_f), scalar(params.epsilon_e)};
    if (with_split) {
      row.push_back(std::to_string(comp.n_e));
      row.push_back(std::to_string(comp.n_f));
    } else {
      row.push_back(std::to_string(comp.total()));
    }
    row.insert(row.end(), {scalar(xi), scalar(p), scalar(bound), flag(*x.xi_within_bound)});
    table.rows.push_back(std::move(row));
  }
}

}  // namespace detail

inline CsvTable sweep_csv(SweepKind kind, const RunConfig& raw, const SweepOptions& opt) {
  const double eps_f_default = kind == SweepKind::kFig6 ? kFig6EpsilonF : kDefaultEpsilonF;
  const ResolvedConfig cfg = resolve(raw, eps_f_default);
  const SavingsParams& params = cfg.params;
  const int m = params.max_platoon_size;
  CsvTable table;

  switch (kind) {
    case SweepKind::kFig2: {
      table.comments = {
          "stability probability of the stable allocation x(xi), mixed platoons of N=" +
              std::to_string(m),
          "columns: epsilon_f, epsilon_e (EUR/km), n_e, n_f, xi, stability_probability, "
          "xi_bound (top of certified interval), within_bound (1 if xi <= xi_bound)"};
      table.header = {"epsilon_f", "epsilon_e", "n_e", "n_f", "xi",
                      "stability_probability", "xi_bound", "within_bound"};
      const auto grid = arithmetic_grid(opt.xi_min.value_or(0.005), opt.xi_max, opt.xi_step);
      for (int ne = 1; ne < m; ++ne) {
        detail::stability_rows(table, Fleet::from_composition({ne, m - ne}), params, grid, true);
      }
      break;
    }
    case SweepKind::kFig3: {
      table.comments = {
          "stability probability of x(xi), homogeneous fuel-powered platoons, N=2.." +
              std::to_string(m),
          "columns: epsilon_f, epsilon_e (EUR/km), n, xi, stability_probability, "
          "xi_bound (1/(N-1)), within_bound (1 if xi <= xi_bound)"};
      table.header = {"epsilon_f", "epsilon_e", "n", "xi",
                      "stability_probability", "xi_bound", "within_bound"};
      const auto grid = arithmetic_grid(opt.xi_min.value_or(0.005), opt.xi_max, opt.xi_step);
      for (int n = 2; n <= m; ++n) {
        detail::stability_rows(table, Fleet::from_composition({0, n}), params, grid, false);
      }
      break;
    }
    case SweepKind::kFig5: {
      table.comments = {
          "stability probability of the Shapley allocation, N=" + std::to_string(m) +
              ", epsilon_e = ratio * epsilon_f",
          "columns: epsilon_f (EUR/km), n_e, n_f, ratio (epsilon_e/epsilon_f), "
          "stability_probability, boundary (n_f/N), above_boundary (1 if ratio >= n_f/N)"};
      table.header = {"epsilon_f", "n_e", "n_f", "ratio",
                      "stability_probability", "boundary", "above_boundary"};
      std::vector<double> ratios;
      for (long k = 1;; ++k) {
        const double r = static_cast<double>(k) * opt.ratio_step;
        if (r >= 1.0 - 1e-12) break;
        ratios.push_back(r);
      }
      if (!(opt.ratio_step > 0.0) || ratios.empty()) {
        throw ConfigError("ratio_step must lie in (0, 1)");
      }
      for (int ne = 1; ne < m; ++ne) {
        const Fleet fleet = Fleet::from_composition({ne, m - ne});
        const Composition comp = fleet.composition();
        const double boundary = static_cast<double>(comp.n_f) / comp.total();
        for (double r : ratios) {
          SavingsParams p = params;
          p.epsilon_e = r * params.epsilon_f;
          const double prob = stability_probability(shapley_allocation(fleet, p), fleet, p);
          table.rows.push_back({scalar(p.epsilon_f), std::to_string(ne),
                                std::to_string(comp.n_f), scalar(r), scalar(prob),
                                scalar(boundary), flag(shapley_ratio_condition(comp, p))});
        }
      }
      break;
    }
    case SweepKind::kFig6: {
      table.comments = {
          "mean relative deviation of x(xi) from the Shapley allocation, N=" +
              std::to_string(m) + ", xi from xi_min to xi*",
          "columns: epsilon_f, epsilon_e (EUR/km), n_e, n_f, xi, delta, in_core (1/0), "
          "xi_star, delta_at_xi_star"};
      table.header = {"epsilon_f", "epsilon_e", "n_e", "n_f", "xi",
                      "delta", "in_core", "xi_star", "delta_at_xi_star"};
      for (int ne = 1; ne < m; ++ne) {
        const Fleet fleet = Fleet::from_composition({ne, m - ne});
        const Composition comp = fleet.composition();
        if (shapley_ratio_slack(comp, params) > kRateTolerance) {
          table.comments.push_back("n_e=" + std::to_string(ne) +
                                   " skipped: Shapley allocation is certified core-stable");
          continue;
        }
        const auto grid =
            default_deviation_grid(comp, params, opt.points, opt.xi_min.value_or(0.002));
        const DeviationCurve curve = deviation_curve(fleet, params, grid);
        const DeviationPoint& top = curve.points.back();
        for (const auto& pt : curve.points) {
          table.rows.push_back({scalar(params.epsilon_f), scalar(params.epsilon_e),
                                std::to_string(ne), std::to_string(comp.n_f), scalar(pt.xi),
                                scalar(pt.delta), flag(pt.in_core), scalar(top.xi),
                                scalar(top.delta)});
        }
      }
      break;
    }
  }
  return table;
}

}  // namespace platoon::cli

#endif  // PLATOON_CLI_COMMANDS_HPP
