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

#include "platoon/game.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace platoon {
namespace {

SavingsParams reference_params() { return SavingsParams{0.07, 0.048, 300.0, 15}; }

TEST(CoalitionValue, ReferenceBenefits) {
  const auto p = reference_params();
  EXPECT_NEAR(coalition_value({2, 3}, p), 77.4, kMoneyTolerance);
  EXPECT_NEAR(coalition_value({0, 3}, p), 42.0, kMoneyTolerance);
  EXPECT_NEAR(coalition_value({2, 0}, p), 14.4, kMoneyTolerance);
  EXPECT_EQ(coalition_value({0, 0}, p), 0.0);
  EXPECT_EQ(coalition_value({1, 0}, p), 0.0);
  EXPECT_EQ(coalition_value({0, 1}, p), 0.0);
}

TEST(CoalitionValue, EvaluatesRuleLiterallyWhenElectricSavesMore) {
  SavingsParams p{0.05, 0.09, 1.0, 15};
  // Electric still leads, even though a fuel leader would save more here.
  EXPECT_NEAR(coalition_value({1, 2}, p), 0.10, kRateTolerance);
}

TEST(OptimalLeader, FollowsComposition) {
  EXPECT_EQ(optimal_leader_type({2, 3}), TruckType::kElectric);
  EXPECT_EQ(optimal_leader_type({0, 3}), TruckType::kFuel);
  EXPECT_FALSE(optimal_leader_type({0, 0}).has_value());
}

TEST(OptimalLeader, ElectricLeaderGainsExactlyTheRateGap) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a = rate(rng), b = rate(rng);
    SavingsParams p{std::max(a, b), std::min(a, b), 300.0, 15};
    if (p.epsilon_e == p.epsilon_f) continue;
    for (int ne = 1; ne <= 6; ++ne) {
      for (int nf = 1; nf <= 6; ++nf) {
        const double et = value_with_leader({ne, nf}, TruckType::kElectric, p);
        const double fpt = value_with_leader({ne, nf}, TruckType::kFuel, p);
        EXPECT_NEAR(et - fpt, (p.epsilon_f - p.epsilon_e) * p.distance, kMoneyTolerance);
        EXPECT_DOUBLE_EQ(coalition_value({ne, nf}, p), et);
      }
    }
  }
}

TEST(CoalitionValue, MatchesLeaderSearchOracle) {
  const auto p = reference_params();
  for (int ne = 0; ne <= 5; ++ne) {
    for (int nf = 0; nf <= 5; ++nf) {
      const auto r = oracle::roster(ne, nf);
      std::vector<std::size_t> all(r.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      EXPECT_NEAR(coalition_value({ne, nf}, p),
                  oracle::value_by_leader_search(r, all, p.epsilon_e, p.epsilon_f) * p.distance,
                  kMoneyTolerance);
    }
  }
}

TEST(Fleet, FromCompositionOrdersElectricFirst) {
  const Fleet fleet = Fleet::from_composition({2, 3});
  ASSERT_EQ(fleet.size(), 5u);
  EXPECT_EQ(fleet.type(0), TruckType::kElectric);
  EXPECT_EQ(fleet.type(2), TruckType::kFuel);
  EXPECT_EQ(fleet.composition(), (Composition{2, 3}));
  EXPECT_EQ(fleet.leader_id(), 0u);
  EXPECT_EQ(Fleet::from_composition({0, 3}).leader_id(), 0u);
}

TEST(Fleet, LeaderIsLowestIdOfLeaderType) {
  Fleet fleet({TruckType::kFuel, TruckType::kFuel, TruckType::kElectric, TruckType::kElectric});
  EXPECT_EQ(fleet.leader_id(), 2u);
}

TEST(Coalition, ValueDependsOnlyOnComposition) {
  Fleet fleet({TruckType::kElectric, TruckType::kFuel, TruckType::kElectric, TruckType::kFuel,
               TruckType::kFuel});
  const auto p = reference_params();
  const Coalition a = Coalition::of({0, 1, 3});
  const Coalition b = Coalition::of({2, 4, 1});
  EXPECT_EQ(a.composition(fleet), b.composition(fleet));
  EXPECT_DOUBLE_EQ(coalition_value(a.composition(fleet), p),
                   coalition_value(b.composition(fleet), p));
}

TEST(StructureValue, ReferenceCases) {
  const Fleet fleet = Fleet::from_composition({2, 3});
  const auto p = reference_params();
  CoalitionStructure split{{Coalition::of({0, 1}), Coalition::of({2, 3, 4})}};
  EXPECT_NEAR(structure_value(split, fleet, p), 56.4, kMoneyTolerance);
  CoalitionStructure singles{{Coalition::of({0}), Coalition::of({1}), Coalition::of({2}),
                              Coalition::of({3}), Coalition::of({4})}};
  EXPECT_NEAR(structure_value(singles, fleet, p), 0.0, kMoneyTolerance);
  CoalitionStructure grand{{Coalition::grand(5)}};
  EXPECT_NEAR(structure_value(grand, fleet, p), 77.4, kMoneyTolerance);
}

TEST(StructureValue, RejectsInvalidPartitions) {
  const Fleet fleet = Fleet::from_composition({2, 3});
  const auto p = reference_params();
  auto code_of = [&](const CoalitionStructure& s) {
    try {
      structure_value(s, fleet, p);
    } catch (const GameError& e) {
      return e.code();
    }
    return ErrorCode::kInvalidParams;  // sentinel: no throw
  };
  EXPECT_EQ(code_of({{Coalition::of({0, 1}), Coalition::of({1, 2, 3, 4})}}),
            ErrorCode::kInvalidPartition);
  EXPECT_EQ(code_of({{Coalition::of({0, 1}), Coalition::of({2, 3})}}),
            ErrorCode::kInvalidPartition);
  EXPECT_EQ(code_of({{Coalition::grand(5), Coalition()}}), ErrorCode::kInvalidPartition);
  EXPECT_EQ(code_of({{Coalition::grand(6)}}), ErrorCode::kInvalidPartition);
}

// ---------------------------------------------------------------------------

std::set<oracle::TypePartition> as_oracle_keys(const std::vector<TypeStructure>& structures) {
  std::set<oracle::TypePartition> keys;
  for (const auto& s : structures) {
    oracle::TypePartition part;
    for (Composition b : s) part.emplace_back(b.n_e, b.n_f);
    std::sort(part.begin(), part.end());
    keys.insert(part);
  }
  return keys;
}

TEST(EnumerateTypeStructures, ReferenceCounts) {
  EXPECT_EQ(enumerate_type_structures({2, 3}).size(), 16u);
  EXPECT_EQ(enumerate_type_structures({1, 0}).size(), 1u);
  // Frozen from the labeled-partition oracle (see MatchesLabeledOracle).
  EXPECT_EQ(enumerate_type_structures({2, 2}).size(), 9u);
  EXPECT_EQ(enumerate_type_structures({1, 1}).size(), 2u);
}

TEST(EnumerateTypeStructures, MatchesLabeledOracle) {
  for (int ne = 0; ne <= 4; ++ne) {
    for (int nf = 0; nf <= 4; ++nf) {
      if (ne + nf == 0) continue;
      const auto got = enumerate_type_structures({ne, nf});
      const auto expected = oracle::type_partitions_by_labeled_enumeration(oracle::roster(ne, nf));
      EXPECT_EQ(got.size(), expected.size()) << ne << "," << nf;
      EXPECT_EQ(as_oracle_keys(got), expected) << ne << "," << nf;
    }
  }
  EXPECT_EQ(oracle::type_partitions_by_labeled_enumeration(oracle::roster(2, 2)).size(), 9u);
}

TEST(EnumerateTypeStructures, CanonicalOrder) {
  const auto all = enumerate_type_structures({2, 3});
  EXPECT_EQ(to_notation(all.front()), "(EEDDD)");
  EXPECT_EQ(to_notation(all.back()), "(E),(E),(D),(D),(D)");
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (std::size_t b = 1; b < all[k].size(); ++b) {
      EXPECT_FALSE(block_precedes(all[k][b], all[k][b - 1]));
    }
    if (k > 0) {
      EXPECT_TRUE(structure_precedes(all[k - 1], all[k]));
    }
  }
}

TEST(EnumerateTypeStructures, GrandCoalitionIsStrictMaximum) {
  const auto p = reference_params();
  const auto all = enumerate_type_structures({2, 3});
  const double grand = type_structure_value(all.front(), p);
  for (std::size_t k = 1; k < all.size(); ++k) {
    EXPECT_LT(type_structure_value(all[k], p), grand - kMoneyTolerance);
  }
}

TEST(EnumerateTypeStructures, RealizedStructureHasSameValue) {
  const auto p = reference_params();
  const Fleet fleet = Fleet::from_composition({2, 3});
  for (const auto& s : enumerate_type_structures({2, 3})) {
    EXPECT_NEAR(structure_value(realize(s, fleet), fleet, p), type_structure_value(s, p),
                kMoneyTolerance);
  }
}

TEST(EnumerateTypeStructures, RejectsEmptyComposition) {
  EXPECT_THROW(enumerate_type_structures({0, 0}), GameError);
}

// ---------------------------------------------------------------------------

TEST(Superadditivity, HoldsOnReferenceInstances) {
  EXPECT_TRUE(check_superadditivity({2, 3}, reference_params()).empty());
  EXPECT_TRUE(check_superadditivity({0, 2}, reference_params()).empty());
}

TEST(Superadditivity, RandomRatesAgreeWithExactOracle) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::int64_t> micro(1, 1'000'000);
  for (int trial = 0; trial < 40; ++trial) {
    std::int64_t a = micro(rng), b = micro(rng);
    if (a == b) continue;
    const std::int64_t re = std::min(a, b), rf = std::max(a, b);
    SavingsParams p{rf * 1e-6, re * 1e-6, 300.0, 15};
    for (int ne = 0; ne <= 12; ++ne) {
      for (int nf = 0; ne + nf <= 12; ++nf) {
        EXPECT_EQ(oracle::exact_superadditivity_violations(ne, nf, re, rf), 0);
        EXPECT_TRUE(check_superadditivity({ne, nf}, p).empty());
      }
    }
  }
}

TEST(Superadditivity, HoldsEvenWhenElectricSavesMore) {
  // Merging always frees at least one leader slot, so the gain is one
  // follower saving (eps_e or eps_f) whatever the rate ordering.
  SavingsParams p{0.05, 0.09, 1.0, 15};
  for (int ne = 0; ne <= 6; ++ne)
    for (int nf = 0; nf <= 6; ++nf) EXPECT_TRUE(check_superadditivity({ne, nf}, p).empty());
}

}  // namespace
}  // namespace platoon
