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

#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "penumbral/core/notation.hpp"
#include "penumbral/core/rules.hpp"

namespace penumbral::testing {

inline WorldState state_from(const char* text) {
  auto s = parse_state(text);
  if (!s) throw std::runtime_error(std::string("bad state text: ") + text);
  return *s;
}

// Random action: mostly requestable moves, occasionally any executable one.
inline Action random_action(const WorldState& s, std::mt19937_64& rng) {
  std::vector<Action> actions;
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    legal_actions(s, &actions);
  } else {
    requestable_actions(s, &actions);
  }
  return actions[std::uniform_int_distribution<std::size_t>(0, actions.size() - 1)(rng)];
}

// States visited by random games; restarts from the initial position on game end.
inline std::vector<WorldState> random_states(std::size_t count, std::uint64_t seed,
                                             int max_halfturns = 200) {
  std::mt19937_64 rng(seed);
  std::vector<WorldState> out;
  WorldState s = WorldState::initial();
  while (out.size() < count) {
    out.push_back(s);
    if (s.is_terminal() || s.halfturn() >= max_halfturns) {
      s = WorldState::initial();
      continue;
    }
    s = apply_action(s, random_action(s, rng)).state;
  }
  return out;
}

// Eight-turn game: White wins by capturing the king on e8 after the
// requested h5e8 stops short on g6.
struct ScriptedTurn {
  const char* sense;
  const char* move;
};
inline constexpr ScriptedTurn kShortGame[] = {
    {"g6", "e2e4"}, {"e3", "h7h5"}, {"g7", "d2d4"}, {"f2", "f7f5"}, {"g6", "e4f5"},
    {"e4", "h5h4"}, {"d7", "f1e2"}, {"g4", "b8c6"}, {"g7", "e2h5"}, {"g4", "h8h5"},
    {"b7", "d1h5"}, {"g5", "g7g6"}, {"e7", "h5e8"}, {"g6", "d7d6"}, {"g6", "g6e8"}};

// Plays scripted turns from the initial position. `on_step` sees the state
// before each action, the requested action and the resulting step.
using StepCallback = std::function<void(const WorldState&, const Action&, const Step&)>;
inline WorldState play_script(std::span<const ScriptedTurn> turns, const StepCallback& on_step) {
  WorldState s = WorldState::initial();
  for (const auto& t : turns) {
    for (const std::string& text : {std::string("sense:") + t.sense, std::string("move:") + t.move}) {
      if (s.is_terminal()) return s;
      const Action a = *parse_action(text);
      const Step step = apply_action(s, a);
      on_step(s, a, step);
      s = step.state;
    }
  }
  return s;
}

}  // namespace penumbral::testing
