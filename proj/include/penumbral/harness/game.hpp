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

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "penumbral/core/rules.hpp"
#include "penumbral/harness/agent.hpp"

namespace penumbral {

inline constexpr int kGameRecordVersion = 1;

// One player's turn: a sense followed by a move request.
struct TurnRecord {
  Color color = Color::kWhite;
  Action sense;
  std::string sense_result;  // sense_result_text of what the sense revealed
  Action requested;
  Action executed;
  OptSquare capture;
  // |X| reported by each agent after the move; empty when it does not track.
  std::optional<std::size_t> states_white;
  std::optional<std::size_t> states_black;
  double sense_ms = 0;
  double move_ms = 0;
};

enum class Termination { kKingCapture, kTurnCap, kError };

struct GameRecord {
  std::string white;
  std::string black;
  std::uint64_t seed = 0;
  std::uint64_t white_seed = 0;
  std::uint64_t black_seed = 0;
  int turn_cap = 150;
  std::vector<TurnRecord> turns;
  std::optional<Color> winner;
  Termination termination = Termination::kKingCapture;
  std::string error;
  double total_ms = 0;

  bool aborted() const { return termination == Termination::kError; }
  // 1 for a White win, 0 for a Black win, 0.5 otherwise.
  double white_score() const;
};

struct TimeControl {
  double per_action = 1.0;  // seconds
  // Use a fraction of the remaining clock instead of a fixed budget.
  bool proportional = false;
  double clock = 900.0;
  double fraction = 1.0 / 40.0;
};

struct GameOptions {
  std::uint64_t seed = 0;  // agent seeds derive from it
  int turn_cap = 150;      // full turns; reaching it is a draw
  TimeControl time;
  // Called with the state before every action, the action and the result.
  std::function<void(const WorldState&, const Action&, const Step&)> on_step;
};

// Plays one game. Tracking failures inside an agent and actions outside
// the legal or requestable set abort the game with Termination::kError.
GameRecord play_game(Agent& white, Agent& black, const GameOptions& options);

std::string_view to_string(Termination t);
nlohmann::json to_json(const GameRecord& r);
// Throws std::invalid_argument on malformed input or a wrong version.
GameRecord game_from_json(const nlohmann::json& j);

// The same encoding as stored in records, e.g. "e3. f3. g3P ...".
std::string sense_result_text(const SenseResult& r);

void write_jsonl(std::ostream& out, const GameRecord& r);
std::vector<GameRecord> read_jsonl(std::istream& in);

struct ReplayResult {
  bool ok = true;
  std::string mismatch;  // first difference found
  std::vector<WorldState> states;  // state before every action, then the final one
};

// Re-simulates a record from the initial position and checks every stored
// observation, the winner and the termination.
ReplayResult replay(const GameRecord& r);

}  // namespace penumbral
