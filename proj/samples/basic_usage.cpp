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

// Values a mixed fleet, allocates the benefit three ways and checks the core.

#include <cstdio>

#include "platoon/platoon.hpp"

int main() {
  using namespace platoon;
  const SavingsParams params{0.07, 0.048, 300.0, 15};
  const Fleet fleet = Fleet::from_composition({2, 3});

  std::printf("v(N) = %.2f EUR\n", coalition_value(fleet.composition(), params));

  const double bound = xi_upper_bound(fleet.composition(), params).upper;
  const Allocation allocations[] = {stable_allocation(fleet, params, bound),
                                    shapley_allocation(fleet, params), even_split(fleet, params)};
  const Allocation& phi = allocations[1];
  for (const Allocation& x : allocations) {
    std::printf("%-12s", x.scheme.label().c_str());
    for (double v : x.payoffs) std::printf(" %6.2f", v);
    std::printf("  core=%d  delta=%.4f\n", in_core(x, fleet, params).is_member ? 1 : 0,
                mean_relative_deviation(x, phi));
  }

  const SavingsParams priced{0.72, 0.048, 300.0, 15};
  const Fleet big = Fleet::from_composition({4, 11});
  const auto dm = deviation_minimizing_allocation(big, priced);
  std::printf("deviation-min (4,11): xi* = %.6f  core=%d  delta=%.4f\n", dm.xi_star,
              in_core(dm.allocation, big, priced).is_member ? 1 : 0,
              mean_relative_deviation(dm.allocation, shapley_allocation(big, priced)));
  return 0;
}
