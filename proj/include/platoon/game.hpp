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

// Mixed-energy truck platooning as a transferable-utility coalitional game.
//
// A coalition forms one platoon. The leader saves nothing; every follower
// saves a per-km amount that depends on its energy type. The characteristic
// function picks the leader that maximises the followers' total savings, so
// an electric truck leads whenever one is present.

#ifndef PLATOON_GAME_HPP
#define PLATOON_GAME_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platoon/error.hpp"

namespace platoon {

/// Absolute tolerance for per-km quantities (rates, ratios).
inline constexpr double kRateTolerance = 1e-9;
/// Absolute tolerance for distance-scaled money (EUR).
inline constexpr double kMoneyTolerance = 1e-6;

enum class TruckType { kElectric, kFuel };

inline constexpr std::string_view short_name(TruckType type) {
  return type == TruckType::kElectric ? "ET" : "FPT";
}

/// Single-letter block notation: E for electric, D for diesel/fuel.
inline constexpr char type_letter(TruckType type) {
  return type == TruckType::kElectric ? 'E' : 'D';
}

struct SavingsParams {
  double epsilon_f = 0.07;   // EUR/km saved by a fuel-powered follower
  double epsilon_e = 0.048;  // EUR/km saved by an electric follower
  double distance = 300.0;   // km
  int max_platoon_size = 15;

  /// Throws kInvalidParams unless every field is in range. epsilon_e may
  /// equal or exceed epsilon_f here; operations that need the ordering
  /// check it themselves.
  void validate() const {
    if (!(epsilon_f > 0.0)) fail(ErrorCode::kInvalidParams, "epsilon_f must be > 0");
    if (!(epsilon_e > 0.0)) fail(ErrorCode::kInvalidParams, "epsilon_e must be > 0");
    if (!(distance > 0.0)) fail(ErrorCode::kInvalidParams, "distance must be > 0");
    if (max_platoon_size < 2) {
      fail(ErrorCode::kInvalidParams, "max_platoon_size must be >= 2");
    }
  }

  double ratio() const { return epsilon_e / epsilon_f; }

  /// Money threshold below which a coalition deficit is treated as zero.
  double core_tolerance() const { return kRateTolerance * distance; }
};

/// Counts of electric and fuel-powered trucks; every value in the game
/// depends on a coalition only through this pair.
struct Composition {
  int n_e = 0;
  int n_f = 0;

  constexpr int total() const { return n_e + n_f; }
  constexpr bool empty() const { return total() == 0; }
  constexpr bool mixed() const { return n_e > 0 && n_f > 0; }

  friend constexpr bool operator==(const Composition&, const Composition&) = default;
  friend constexpr auto operator<=>(const Composition&, const Composition&) = default;
};

/// Leader chosen by the characteristic function, or nullopt for an empty
/// coalition.
inline std::optional<TruckType> optimal_leader_type(Composition comp) {
  if (comp.n_e >= 1) return TruckType::kElectric;
  if (comp.n_f >= 1) return TruckType::kFuel;
  return std::nullopt;
}

/// Followers' savings with a leader of the given type. The type must be
/// present in the coalition.
inline double value_with_leader(Composition comp, TruckType leader,
                                const SavingsParams& params) {
  if (leader == TruckType::kElectric) {
    if (comp.n_e < 1) fail(ErrorCode::kInvalidParams, "no electric truck to lead");
    return params.distance *
           (params.epsilon_e * (comp.n_e - 1) + params.epsilon_f * comp.n_f);
  }
  if (comp.n_f < 1) fail(ErrorCode::kInvalidParams, "no fuel-powered truck to lead");
  return params.distance *
         (params.epsilon_e * comp.n_e + params.epsilon_f * (comp.n_f - 1));
}

/// Characteristic function v(S) in money. Zero for empty and singleton
/// coalitions.
inline double coalition_value(Composition comp, const SavingsParams& params) {
  if (comp.total() <= 1) return 0.0;
  return value_with_leader(comp, *optimal_leader_type(comp), params);
}

/// Labeled roster. A truck's id is its index.
class Fleet {
 public:
  Fleet() = default;
  explicit Fleet(std::vector<TruckType> trucks) : trucks_(std::move(trucks)) {}

  /// Electric trucks take ids [0, n_e), fuel-powered trucks the rest.
  static Fleet from_composition(Composition comp) {
    if (comp.n_e < 0 || comp.n_f < 0) {
      fail(ErrorCode::kInvalidParams, "truck counts must be non-negative");
    }
    std::vector<TruckType> trucks(static_cast<std::size_t>(comp.n_e), TruckType::kElectric);
    trucks.insert(trucks.end(), static_cast<std::size_t>(comp.n_f), TruckType::kFuel);
    return Fleet(std::move(trucks));
  }

  std::size_t size() const { return trucks_.size(); }
  TruckType type(std::size_t id) const { return trucks_.at(id); }
  const std::vector<TruckType>& trucks() const { return trucks_; }

  Composition composition() const {
    Composition comp;
    for (TruckType t : trucks_) (t == TruckType::kElectric ? comp.n_e : comp.n_f)++;
    return comp;
  }

  /// Lowest id of the given type, if any.
  std::optional<std::size_t> lowest_id(TruckType type) const {
    auto it = std::find(trucks_.begin(), trucks_.end(), type);
    if (it == trucks_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - trucks_.begin());
  }

  /// Designated leader of the grand coalition: lowest id of the optimal
  /// leader type.
  std::optional<std::size_t> leader_id() const {
    auto type = optimal_leader_type(composition());
    if (!type) return std::nullopt;
    return lowest_id(*type);
  }

 private:
  std::vector<TruckType> trucks_;
};

/// Checks that the fleet can be a game's grand coalition.
inline void require_grand_coalition(const Fleet& fleet, const SavingsParams& params) {
  if (fleet.size() < 2) fail(ErrorCode::kFleetTooSmall, "fleet needs at least 2 trucks");
  if (fleet.size() > static_cast<std::size_t>(params.max_platoon_size)) {
    fail(ErrorCode::kFleetTooLarge, "fleet exceeds max_platoon_size " +
                                        std::to_string(params.max_platoon_size));
  }
}

/// Subset of fleet ids stored as a bitmask (bit i set = truck i present).
class Coalition {
 public:
  static constexpr std::size_t kMaxFleet = 63;

  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t mask) : mask_(mask) {}

  static Coalition of(std::initializer_list<std::size_t> ids) {
    Coalition c;
    for (std::size_t id : ids) c.insert(id);
    return c;
  }
  static Coalition grand(std::size_t fleet_size) {
    return Coalition(fleet_size >= 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << fleet_size) - 1);
  }

  void insert(std::size_t id) { mask_ |= std::uint64_t{1} << id; }
  bool contains(std::size_t id) const { return (mask_ >> id) & 1U; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const { return mask_ == 0; }
  std::uint64_t mask() const { return mask_; }

  Composition composition(const Fleet& fleet) const {
    Composition comp;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
      auto id = static_cast<std::size_t>(std::countr_zero(m));
      (fleet.type(id) == TruckType::kElectric ? comp.n_e : comp.n_f)++;
    }
    return comp;
  }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Labeled partition of a fleet into platoons.
struct CoalitionStructure {
  std::vector<Coalition> blocks;
};

/// Throws kInvalidPartition unless blocks are non-empty, pairwise disjoint,
/// within the fleet and cover it.
inline void validate_partition(const CoalitionStructure& structure, const Fleet& fleet) {
  if (fleet.size() > Coalition::kMaxFleet) {
    fail(ErrorCode::kFleetTooLarge, "fleet too large for coalition masks");
  }
  const std::uint64_t all = Coalition::grand(fleet.size()).mask();
  std::uint64_t seen = 0;
  for (const auto& block : structure.blocks) {
    if (block.empty()) fail(ErrorCode::kInvalidPartition, "empty block");
    if ((block.mask() & ~all) != 0) {
      fail(ErrorCode::kInvalidPartition, "block contains an id outside the fleet");
    }
    if ((block.mask() & seen) != 0) fail(ErrorCode::kInvalidPartition, "blocks overlap");
    seen |= block.mask();
  }
  if (seen != all) fail(ErrorCode::kInvalidPartition, "blocks do not cover the fleet");
}

/// Total benefit of a coalition structure.
inline double structure_value(const CoalitionStructure& structure, const Fleet& fleet,
                              const SavingsParams& params) {
  validate_partition(structure, fleet);
  double total = 0.0;
  for (const auto& block : structure.blocks) {
    total += coalition_value(block.composition(fleet), params);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Type-level partitions
// ---------------------------------------------------------------------------

/// Partition of the type multiset {E x n_e, D x n_f}, blocks in canonical
/// order. Two labeled structures map to the same TypeStructure iff their
/// multisets of block compositions agree.
using TypeStructure = std::vector<Composition>;

/// Canonical block order: larger blocks first, then more electric trucks.
inline bool block_precedes(Composition a, Composition b) {
  if (a.total() != b.total()) return a.total() > b.total();
  return a.n_e > b.n_e;
}

inline bool structure_precedes(const TypeStructure& a, const TypeStructure& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      block_precedes);
}

/// Block notation, e.g. "(EE),(DDD)".
inline std::string to_notation(const TypeStructure& structure) {
  std::string out;
  for (std::size_t i = 0; i < structure.size(); ++i) {
    if (i > 0) out += ',';
    out += '(';
    out.append(static_cast<std::size_t>(structure[i].n_e), 'E');
    out.append(static_cast<std::size_t>(structure[i].n_f), 'D');
    out += ')';
  }
  return out;
}

inline double type_structure_value(const TypeStructure& structure,
                                   const SavingsParams& params) {
  double total = 0.0;
  for (Composition block : structure) total += coalition_value(block, params);
  return total;
}

namespace detail {

inline void extend_type_structures(Composition remaining, Composition bound,
                                   TypeStructure& prefix,
                                   std::vector<TypeStructure>& out) {
  if (remaining.empty()) {
    out.push_back(prefix);
    return;
  }
  // Next block may not precede the previous one, so each multiset is
  // produced exactly once.
  for (int size = std::min(remaining.total(), bound.total()); size >= 1; --size) {
    const int e_hi = std::min(remaining.n_e, size);
    for (int e = e_hi; e >= 0; --e) {
      const Composition block{e, size - e};
      if (block.n_f > remaining.n_f) break;
      if (block_precedes(block, bound)) continue;
      prefix.push_back(block);
      extend_type_structures({remaining.n_e - e, remaining.n_f - block.n_f}, block,
                             prefix, out);
      prefix.pop_back();
    }
  }
}

}  // namespace detail

/// Every type-level partition of comp, sorted by structure_precedes. The
/// grand coalition comes first and the all-singletons structure last.
inline std::vector<TypeStructure> enumerate_type_structures(Composition comp) {
  if (comp.n_e < 0 || comp.n_f < 0 || comp.total() < 1) {
    fail(ErrorCode::kFleetTooSmall, "composition must contain at least one truck");
  }
  std::vector<TypeStructure> out;
  TypeStructure prefix;
  detail::extend_type_structures(comp, comp, prefix, out);
  std::sort(out.begin(), out.end(), structure_precedes);
  return out;
}

/// Assigns concrete fleet ids to a type-level structure, lowest ids first.
inline CoalitionStructure realize(const TypeStructure& structure, const Fleet& fleet) {
  std::vector<std::size_t> electric, fuel;
  for (std::size_t id = 0; id < fleet.size(); ++id) {
    (fleet.type(id) == TruckType::kElectric ? electric : fuel).push_back(id);
  }
  std::size_t next_e = 0, next_f = 0;
  CoalitionStructure labeled;
  for (Composition block : structure) {
    if (next_e + static_cast<std::size_t>(block.n_e) > electric.size() ||
        next_f + static_cast<std::size_t>(block.n_f) > fuel.size()) {
      fail(ErrorCode::kInvalidPartition, "structure does not match fleet composition");
    }
    Coalition c;
    for (int k = 0; k < block.n_e; ++k) c.insert(electric[next_e++]);
    for (int k = 0; k < block.n_f; ++k) c.insert(fuel[next_f++]);
    labeled.blocks.push_back(c);
  }
  return labeled;
}

// ---------------------------------------------------------------------------
// Superadditivity
// ---------------------------------------------------------------------------

struct SuperadditivityViolation {
  Composition first;
  Composition second;
  double deficit = 0.0;  // v(first) + v(second) - v(first + second), money
};

/// Every pair of disjoint non-empty sub-compositions whose merged value falls
/// below the sum of their separate values. Each unordered pair is visited
/// once.
inline std::vector<SuperadditivityViolation> check_superadditivity(
    Composition comp, const SavingsParams& params) {
  std::vector<SuperadditivityViolation> violations;
  const double tol = params.core_tolerance();
  for (int ae = 0; ae <= comp.n_e; ++ae) {
    for (int af = 0; af <= comp.n_f; ++af) {
      const Composition a{ae, af};
      if (a.empty()) continue;
      for (int be = 0; be + ae <= comp.n_e; ++be) {
        for (int bf = 0; bf + af <= comp.n_f; ++bf) {
          const Composition b{be, bf};
          if (b.empty() || b < a) continue;
          const double merged = coalition_value({ae + be, af + bf}, params);
          const double split = coalition_value(a, params) + coalition_value(b, params);
          if (merged < split - tol) violations.push_back({a, b, split - merged});
        }
      }
    }
  }
  return violations;
}

}  // namespace platoon

#endif  // PLATOON_GAME_HPP
