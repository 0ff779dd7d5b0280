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

#ifndef PLATOON_PLATOON_HPP
#define PLATOON_PLATOON_HPP

#include "platoon/allocation.hpp"
#include "platoon/error.hpp"
#include "platoon/fairness.hpp"
#include "platoon/game.hpp"
#include "platoon/stability.hpp"

#endif  // PLATOON_PLATOON_HPP
