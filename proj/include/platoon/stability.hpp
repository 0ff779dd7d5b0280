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

// Core membership of grand-coalition allocations.
//
// A non-empty proper subset S blocks an allocation x when
//   v(S) > sum_{i in S} x_i + tol,   tol = 1e-9 * distance.
// The stability probability is the fraction of the 2^N - 2 candidate
// subsets that do not block.
//
// Two evaluation routes are provided and must agree exactly:
//  * in_core: trucks are grouped into classes of equal (type, payoff); the
//    walk is over per-class counts, each weighted by a product of binomials.
//    Stable allocations have at most three classes, so this is polynomial.
//  * in_core_exhaustive: every labeled subset is visited.

#ifndef PLATOON_STABILITY_HPP
#define PLATOON_STABILITY_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "platoon/allocation.hpp"
#include "platoon/error.hpp"
#include "platoon/game.hpp"

namespace platoon {

/// Blocking subsets of one composition, with their labeled count.
struct BlockingClass {
  Composition composition;
  std::uint64_t count = 0;

  friend bool operator==(const BlockingClass&, const BlockingClass&) = default;
};

struct CoreReport {
  bool is_member = false;
  std::vector<BlockingClass> blocking;  // ascending by composition
  std::uint64_t violating_subsets = 0;
  std::uint64_t candidate_subsets = 0;  // 2^N - 2
  double stability_probability = 0.0;
};

inline constexpr std::size_t kExhaustiveCoreLimit = 30;

namespace detail {

inline void require_core_inputs(const Allocation& alloc, const Fleet& fleet,
                                const SavingsParams& params) {
  require_grand_coalition(fleet, params);
  if (fleet.size() > Coalition::kMaxFleet) {
    fail(ErrorCode::kFleetTooLarge, "fleet too large for subset enumeration");
  }
  if (alloc.payoffs.size() != fleet.size()) {
    fail(ErrorCode::kFleetMismatch, "allocation length differs from fleet size");
  }
  const double grand = coalition_value(fleet.composition(), params);
  if (std::abs(alloc.total() - grand) > kMoneyTolerance) {
    fail(ErrorCode::kNotEfficient, "payoffs do not sum to the grand-coalition value");
  }
}

inline CoreReport make_report(const std::map<Composition, std::uint64_t>& blocking,
                              std::size_t fleet_size) {
  CoreReport report;
  report.candidate_subsets = (std::uint64_t{1} << fleet_size) - 2;
  for (const auto& [comp, count] : blocking) {
    report.blocking.push_back({comp, count});
    report.violating_subsets += count;
  }
  report.is_member = report.violating_subsets == 0;
  report.stability_probability =
      report.is_member ? 1.0
                       : 1.0 - static_cast<double>(report.violating_subsets) /
                                   static_cast<double>(report.candidate_subsets);
  return report;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

struct PayoffClass {
  TruckType type;
  double payoff;
  int size;
};

inline std::vector<PayoffClass> group_payoff_classes(const Allocation& alloc,
                                                     const Fleet& fleet) {
  std::vector<PayoffClass> classes;
  for (std::size_t id = 0; id < fleet.size(); ++id) {
    const TruckType t = fleet.type(id);
    const double x = alloc.payoffs[id];
    bool placed = false;
    for (auto& c : classes) {
      if (c.type == t && c.payoff == x) {
        ++c.size;
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({t, x, 1});
  }
  return classes;
}

}  // namespace detail

/// Core check over payoff classes. Same verdict and counts as
/// in_core_exhaustive.
inline CoreReport in_core(const Allocation& alloc, const Fleet& fleet,
                          const SavingsParams& params) {
  detail::require_core_inputs(alloc, fleet, params);
  const auto classes = detail::group_payoff_classes(alloc, fleet);
  const double tol = params.core_tolerance();
  const int n = static_cast<int>(fleet.size());

  std::map<Composition, std::uint64_t> blocking;
  std::vector<int> counts(classes.size(), 0);
  while (true) {
    Composition comp;
    double received = 0.0;
    std::uint64_t weight = 1;
    for (std::size_t j = 0; j < classes.size(); ++j) {
      (classes[j].type == TruckType::kElectric ? comp.n_e : comp.n_f) += counts[j];
      received += counts[j] * classes[j].payoff;
      weight *= detail::binomial(classes[j].size, counts[j]);
    }
    if (comp.total() > 0 && comp.total() < n &&
        coalition_value(comp, params) > received + tol) {
      blocking[comp] += weight;
    }
    std::size_t j = 0;
    while (j < classes.size() && counts[j] == classes[j].size) counts[j++] = 0;
    if (j == classes.size()) break;
    ++counts[j];
  }
  return detail::make_report(blocking, fleet.size());
}

/// Core check over all 2^N - 2 labeled subsets.
inline CoreReport in_core_exhaustive(const Allocation& alloc, const Fleet& fleet,
                                     const SavingsParams& params) {
  detail::require_core_inputs(alloc, fleet, params);
  if (fleet.size() > kExhaustiveCoreLimit) {
    fail(ErrorCode::kFleetTooLarge, "exhaustive core check is limited to 30 trucks");
  }
  const double tol = params.core_tolerance();
  const std::uint64_t full = Coalition::grand(fleet.size()).mask();

  std::map<Composition, std::uint64_t> blocking;
  for (std::uint64_t m = 1; m < full; ++m) {
    const Coalition s(m);
    double received = 0.0;
    for (std::uint64_t rest = m; rest != 0; rest &= rest - 1) {
      received += alloc.payoffs[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    const Composition comp = s.composition(fleet);
    if (coalition_value(comp, params) > received + tol) ++blocking[comp];
  }
  return detail::make_report(blocking, fleet.size());
}

inline double stability_probability(const Allocation& alloc, const Fleet& fleet,
                                    const SavingsParams& params) {
  return in_core(alloc, fleet, params).stability_probability;
}

// ---------------------------------------------------------------------------
// Analytic conditions for the Shapley value
// ---------------------------------------------------------------------------

/// Right-hand side of the per-coalition ratio test for a sub-composition
/// with 1 <= sub.n_e < comp.n_e:
///   (sub.n_f * n_e - n_f * sub.n_e) / (N * (n_e - sub.n_e)).
inline double shapley_condition_rhs(Composition comp, Composition sub) {
  const double n = comp.total();
  return (static_cast<double>(sub.n_f) * comp.n_e -
          static_cast<double>(comp.n_f) * sub.n_e) /
         (n * (comp.n_e - sub.n_e));
}

namespace detail {

inline void require_both_types(Composition comp) {
  if (!comp.mixed()) fail(ErrorCode::kBothTypesRequired, "condition needs both truck types");
}

}  // namespace detail

/// Exact (necessary and sufficient) condition for the closed-form Shapley
/// value to lie in the core of a mixed fleet. Coalitions with no electric
/// truck or with every electric truck never block, so only
/// 1 <= sub.n_e < n_e is tested.
inline bool shapley_core_condition(Composition comp, const SavingsParams& params) {
  detail::require_both_types(comp);
  const double ratio = params.ratio();
  for (int se = 1; se < comp.n_e; ++se) {
    for (int sf = 0; sf <= comp.n_f; ++sf) {
      if (ratio < shapley_condition_rhs(comp, {se, sf}) - kRateTolerance) return false;
    }
  }
  return true;
}

/// Sufficient condition eps_e / eps_f >= n_f / N for the Shapley value to
/// lie in the core of a mixed fleet.
inline bool shapley_ratio_condition(Composition comp, const SavingsParams& params) {
  detail::require_both_types(comp);
  return shapley_ratio_slack(comp, params) >= -kRateTolerance;
}

}  // namespace platoon

#endif  // PLATOON_STABILITY_HPP
