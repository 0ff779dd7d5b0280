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

#ifndef PLATOON_ALLOCATION_HPP
#define PLATOON_ALLOCATION_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <bit>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/game.hpp"

namespace platoon {

enum class SchemeKind {
  kStable,
  kShapleyClosedForm,
  kShapleyBruteForce,
  kEvenSplit,
  kDeviationMin,
  kCustom,
};

struct Scheme {
  SchemeKind kind = SchemeKind::kCustom;
  double xi = 0.0;  // leader share; meaningful for kStable and kDeviationMin

  std::string label() const {
    char buf[64];
    switch (kind) {
      case SchemeKind::kStable:
        std::snprintf(buf, sizeof buf, "stable(xi=%.6f)", xi);
        return buf;
      case SchemeKind::kDeviationMin:
        std::snprintf(buf, sizeof buf, "deviation-min(xi*=%.6f)", xi);
        return buf;
      case SchemeKind::kShapleyClosedForm: return "shapley-closed-form";
      case SchemeKind::kShapleyBruteForce: return "shapley-brute-force";
      case SchemeKind::kEvenSplit: return "even-split";
      case SchemeKind::kCustom: return "custom";
    }
    return "unknown";
  }
};

/// Payoff vector of the grand coalition, indexed by truck id.
struct Allocation {
  std::vector<double> payoffs;
  std::size_t leader_id = 0;
  Scheme scheme;
  /// Stable allocations only: whether xi lies inside the certified interval.
  /// Absent when that interval is undefined for the parameters.
  std::optional<bool> xi_within_bound;

  double total() const { return std::accumulate(payoffs.begin(), payoffs.end(), 0.0); }
};

/// Certified interval (0, upper] for the stable allocation's leader share.
struct XiBound {
  double upper = 0.0;
};

namespace detail {

inline void require_type_order(Composition comp, const SavingsParams& params) {
  if (comp.mixed() && !(params.epsilon_e < params.epsilon_f)) {
    fail(ErrorCode::kEpsilonOrder,
         "mixed fleets require epsilon_e < epsilon_f");
  }
}

}  // namespace detail

inline XiBound xi_upper_bound(Composition comp, const SavingsParams& params) {
  if (comp.total() < 2) fail(ErrorCode::kFleetTooSmall, "need at least 2 trucks");
  detail::require_type_order(comp, params);
  if (comp.n_e == 0) return {1.0 / (comp.total() - 1)};
  return {params.epsilon_e /
          (params.epsilon_e * (comp.n_e - 1) + params.epsilon_f * comp.n_f)};
}

/// Leader takes xi * v(N); every follower keeps (1 - xi) times its own
/// per-km saving. Any xi in (0, 1] is accepted; xi_within_bound records
/// whether the core guarantee applies.
inline Allocation stable_allocation(const Fleet& fleet, const SavingsParams& params,
                                    double xi) {
  if (!(xi > 0.0) || xi > 1.0) fail(ErrorCode::kXiOutOfRange, "xi must lie in (0, 1]");
  require_grand_coalition(fleet, params);
  const Composition comp = fleet.composition();
  const double grand = coalition_value(comp, params);
  const std::size_t leader = *fleet.leader_id();

  Allocation alloc;
  alloc.leader_id = leader;
  alloc.scheme = {SchemeKind::kStable, xi};
  alloc.payoffs.resize(fleet.size());
  for (std::size_t id = 0; id < fleet.size(); ++id) {
    if (id == leader) {
      alloc.payoffs[id] = xi * grand;
    } else {
      const double rate = fleet.type(id) == TruckType::kElectric ? params.epsilon_e
                                                                 : params.epsilon_f;
      alloc.payoffs[id] = (1.0 - xi) * rate * params.distance;
    }
  }
  if (!comp.mixed() || params.epsilon_e < params.epsilon_f) {
    alloc.xi_within_bound = xi <= xi_upper_bound(comp, params).upper + kRateTolerance;
  }
  return alloc;
}

/// Per-type Shapley payoffs in money; a field is absent when the type is.
struct ShapleyPayoffs {
  std::optional<double> electric;
  std::optional<double> fuel;
};

inline ShapleyPayoffs shapley_closed_form(Composition comp, const SavingsParams& params) {
  if (comp.total() < 1) fail(ErrorCode::kFleetTooSmall, "need at least 1 truck");
  detail::require_type_order(comp, params);
  const double n = comp.total();
  ShapleyPayoffs phi;
  if (comp.n_e >= 1) {
    const double ne = comp.n_e;
    phi.electric = ((1.0 - 1.0 / ne) * params.epsilon_e +
                    comp.n_f / (n * ne) * params.epsilon_f) *
                   params.distance;
  }
  if (comp.n_f >= 1) phi.fuel = (1.0 - 1.0 / n) * params.epsilon_f * params.distance;
  return phi;
}

/// Closed-form Shapley payoffs spread over the fleet. leader_id is metadata
/// only; the Shapley value assigns no roles.
inline Allocation shapley_allocation(const Fleet& fleet, const SavingsParams& params) {
  require_grand_coalition(fleet, params);
  const ShapleyPayoffs phi = shapley_closed_form(fleet.composition(), params);
  Allocation alloc;
  alloc.leader_id = *fleet.leader_id();
  alloc.scheme = {SchemeKind::kShapleyClosedForm, 0.0};
  alloc.payoffs.reserve(fleet.size());
  for (TruckType t : fleet.trucks()) {
    alloc.payoffs.push_back(t == TruckType::kElectric ? *phi.electric : *phi.fuel);
  }
  return alloc;
}

inline constexpr std::size_t kBruteForceShapleyLimit = 10;

/// Shapley value by the weighted marginal-contribution sum over every
/// subset not containing the player. Exponential; capped at 10 trucks.
inline Allocation shapley_bruteforce(const Fleet& fleet, const SavingsParams& params) {
  const std::size_t n = fleet.size();
  if (n > kBruteForceShapleyLimit) {
    fail(ErrorCode::kFleetTooLarge, "brute-force Shapley is limited to 10 trucks");
  }
  if (n < 1) fail(ErrorCode::kFleetTooSmall, "empty fleet");

  // weight[s] = s! (n - s - 1)! / n!
  std::vector<double> factorial(n + 1, 1.0);
  for (std::size_t k = 1; k <= n; ++k) factorial[k] = factorial[k - 1] * static_cast<double>(k);
  std::vector<double> weight(n);
  for (std::size_t s = 0; s < n; ++s) {
    weight[s] = factorial[s] * factorial[n - s - 1] / factorial[n];
  }

  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<double> value(subsets);
  for (std::uint64_t m = 0; m < subsets; ++m) {
    value[m] = coalition_value(Coalition(m).composition(fleet), params);
  }

  Allocation alloc;
  alloc.scheme = {SchemeKind::kShapleyBruteForce, 0.0};
  alloc.leader_id = fleet.leader_id().value_or(0);
  alloc.payoffs.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    double phi = 0.0;
    for (std::uint64_t m = 0; m < subsets; ++m) {
      if (m & bit) continue;
      phi += weight[static_cast<std::size_t>(std::popcount(m))] * (value[m | bit] - value[m]);
    }
    alloc.payoffs[i] = phi;
  }
  return alloc;
}

inline Allocation even_split(const Fleet& fleet, const SavingsParams& params) {
  require_grand_coalition(fleet, params);
  const double share = coalition_value(fleet.composition(), params) /
                       static_cast<double>(fleet.size());
  Allocation alloc;
  alloc.payoffs.assign(fleet.size(), share);
  alloc.leader_id = *fleet.leader_id();
  alloc.scheme = {SchemeKind::kEvenSplit, 0.0};
  return alloc;
}

/// Signed slack of the ratio test eps_e/eps_f >= n_f/N. Non-negative (up to
/// tolerance) means the Shapley value is certified core-stable.
inline double shapley_ratio_slack(Composition comp, const SavingsParams& params) {
  return params.ratio() - static_cast<double>(comp.n_f) / comp.total();
}

struct DeviationMinResult {
  Allocation allocation;
  double xi_star = 0.0;
};

/// Fallback for mixed fleets whose Shapley value is not certified by the
/// ratio test: the stable allocation at the top of its certified interval,
/// which is the member of that family closest to the Shapley value.
/// Throws kConditionHolds when the ratio test holds strictly; on its
/// boundary both schemes are admissible and this one is returned.
inline DeviationMinResult deviation_minimizing_allocation(const Fleet& fleet,
                                                          const SavingsParams& params) {
  require_grand_coalition(fleet, params);
  const Composition comp = fleet.composition();
  if (!comp.mixed()) {
    fail(ErrorCode::kBothTypesRequired, "deviation-min needs both truck types");
  }
  detail::require_type_order(comp, params);
  if (shapley_ratio_slack(comp, params) > kRateTolerance) {
    fail(ErrorCode::kConditionHolds,
         "condition eps_e/eps_f >= n_f/N holds; use shapley");
  }
  const double xi_star = xi_upper_bound(comp, params).upper;
  Allocation alloc = stable_allocation(fleet, params, xi_star);
  alloc.scheme = {SchemeKind::kDeviationMin, xi_star};
  return {std::move(alloc), xi_star};
}

}  // namespace platoon

#endif  // PLATOON_ALLOCATION_HPP
