// Copyright 2026 The Penumbral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>

#include "penumbral/core/action.hpp"
#include "penumbral/core/state.hpp"

namespace penumbral {

// Flat action numbering shared with the trainer. Moves are from*64+to with
// every promotion piece on one index, senses are 4096+square, pass is 4160.
// 4161..4224 are reserved.
inline constexpr int kNumActionIndices = 4225;
inline constexpr int kSenseIndexBase = 4096;
inline constexpr int kPassIndex = 4160;

int action_index(const Action& a);

// Inverse of action_index. A move onto the last rank by a pawn of the side
// to act in `context` becomes a queen promotion. Empty for reserved indices.
std::optional<Action> action_from_index(int index, const WorldState& context);

}  // namespace penumbral
