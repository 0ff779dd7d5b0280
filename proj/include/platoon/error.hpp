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

#ifndef PLATOON_ERROR_HPP
#define PLATOON_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace platoon {

/// Machine-readable reason attached to every GameError.
enum class ErrorCode {
  kInvalidParams,
  kInvalidPartition,
  kFleetTooSmall,
  kFleetTooLarge,
  kFleetMismatch,
  kXiOutOfRange,
  kEpsilonOrder,
  kBothTypesRequired,
  kConditionHolds,
  kNotEfficient,
  kZeroShapleyPayoff,
  kInvalidGrid,
  kTooManyStructures,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "invalid_params";
    case ErrorCode::kInvalidPartition: return "invalid_partition";
    case ErrorCode::kFleetTooSmall: return "fleet_too_small";
    case ErrorCode::kFleetTooLarge: return "fleet_too_large";
    case ErrorCode::kFleetMismatch: return "fleet_mismatch";
    case ErrorCode::kXiOutOfRange: return "xi_out_of_range";
    case ErrorCode::kEpsilonOrder: return "epsilon_order";
    case ErrorCode::kBothTypesRequired: return "both_types_required";
    case ErrorCode::kConditionHolds: return "condition_holds";
    case ErrorCode::kNotEfficient: return "not_efficient";
    case ErrorCode::kZeroShapleyPayoff: return "zero_shapley_payoff";
    case ErrorCode::kInvalidGrid: return "invalid_grid";
    case ErrorCode::kTooManyStructures: return "too_many_structures";
  }
  return "unknown";
}

/// Precondition or validation failure raised by the library.
class GameError : public std::invalid_argument {
 public:
  GameError(ErrorCode code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw GameError(code, what);
}

}  // namespace platoon

#endif  // PLATOON_ERROR_HPP
