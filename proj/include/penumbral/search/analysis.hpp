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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "penumbral/core/action.hpp"
#include "penumbral/core/state.hpp"

namespace penumbral {

// Senses worth considering for a set of possible states in the sense phase.
// Rim squares are dropped (a neighbouring interior window covers theirs),
// as are windows whose content is the same in every state. Never empty: with
// nothing to learn the lowest interior square (b2) is returned.
std::vector<Action> prune_senses(std::span<const WorldState> states);

// A move the side to act can make in x that takes the opposing king.
std::optional<Action> king_capture(const WorldState& x);

// A request that takes the opposing king in every state, after substitution.
std::optional<Action> static_win_move(std::span<const WorldState> states);

// A sense after which every possible result leaves a guaranteed king capture.
// Gives up (returns empty) above max_states states.
std::optional<Action> static_win_sense(std::span<const WorldState> states,
                                       std::size_t max_states = 4096);

// Dispatches on the phase of the states.
std::optional<Action> static_win(std::span<const WorldState> states);

}  // namespace penumbral
