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

#ifndef PLATOON_FAIRNESS_HPP
#define PLATOON_FAIRNESS_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "platoon/allocation.hpp"
#include "platoon/error.hpp"
#include "platoon/game.hpp"
#include "platoon/stability.hpp"

namespace platoon {

/// (1/N) * sum_i |phi_i - x_i| / phi_i.
inline double mean_relative_deviation(const Allocation& x, const Allocation& phi) {
  if (x.payoffs.size() != phi.payoffs.size() || x.payoffs.empty()) {
    fail(ErrorCode::kFleetMismatch, "allocations index different fleets");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.payoffs.size(); ++i) {
    const double ref = phi.payoffs[i];
    if (ref <= kRateTolerance) {
      fail(ErrorCode::kZeroShapleyPayoff, "reference payoff is zero for truck " +
                                              std::to_string(i));
    }
    sum += std::abs(ref - x.payoffs[i]) / ref;
  }
  return sum / static_cast<double>(x.payoffs.size());
}

struct DeviationPoint {
  double xi = 0.0;
  double delta = 0.0;
  bool in_core = false;
};

struct DeviationCurve {
  std::vector<DeviationPoint> points;
};

/// `points` evenly spaced values from `start` to the top of the certified
/// interval, inclusive.
inline std::vector<double> default_deviation_grid(Composition comp,
                                                  const SavingsParams& params,
                                                  std::size_t points = 60,
                                                  double start = 0.002) {
  const double stop = xi_upper_bound(comp, params).upper;
  if (points < 2 || !(start > 0.0) || !(start < stop)) {
    fail(ErrorCode::kInvalidGrid, "grid needs >= 2 points and 0 < start < xi*");
  }
  std::vector<double> grid(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = start + step * static_cast<double>(k);
  grid.back() = stop;
  return grid;
}

/// Stable allocation's deviation from the Shapley value, and its core
/// verdict, at each grid point. Defined for mixed fleets where the ratio test
/// does not hold strictly; points above xi* are allowed and reported as-is.
inline DeviationCurve deviation_curve(const Fleet& fleet, const SavingsParams& params,
                                      const std::vector<double>& xi_grid) {
  require_grand_coalition(fleet, params);
  const Composition comp = fleet.composition();
  if (!comp.mixed()) fail(ErrorCode::kBothTypesRequired, "deviation curve needs both types");
  if (shapley_ratio_slack(comp, params) > kRateTolerance) {
    fail(ErrorCode::kConditionHolds, "condition eps_e/eps_f >= n_f/N holds; use shapley");
  }
  for (std::size_t k = 0; k < xi_grid.size(); ++k) {
    if (!(xi_grid[k] > 0.0) || xi_grid[k] > 1.0 || (k > 0 && !(xi_grid[k] > xi_grid[k - 1]))) {
      fail(ErrorCode::kInvalidGrid, "xi grid must be strictly increasing within (0, 1]");
    }
  }
  const Allocation phi = shapley_allocation(fleet, params);
  DeviationCurve curve;
  curve.points.reserve(xi_grid.size());
  for (double xi : xi_grid) {
    const Allocation x = stable_allocation(fleet, params, xi);
    curve.points.push_back({xi, mean_relative_deviation(x, phi), in_core(x, fleet, params).is_member});
  }
  return curve;
}

}  // namespace platoon

#endif  // PLATOON_FAIRNESS_HPP
