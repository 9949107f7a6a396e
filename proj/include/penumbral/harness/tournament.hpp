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
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "penumbral/harness/agent.hpp"
#include "penumbral/harness/elo.hpp"
#include "penumbral/harness/game.hpp"

namespace penumbral {

// White and black agent indices for one game.
struct Fixture {
  std::size_t white = 0;
  std::size_t black = 0;
};

// Every pairing plays games_per_pair games with colors alternating, so each
// ordered pair gets half of them up to rounding. Empty pairings mean every
// unordered pair of `agents`.
std::vector<Fixture> schedule(std::size_t agents, std::span<const std::pair<std::size_t, std::size_t>> pairings,
                              std::size_t games_per_pair);

struct TournamentOptions {
  std::size_t games_per_pair = 10;
  std::uint64_t seed = 1;
  int turn_cap = 150;
  TimeControl time;
  std::size_t workers = 1;
  // Attempts per scheduled game before it is given up.
  int max_attempts = 3;
  EloOptions elo;
  // Called after each finished game, including aborted ones, in completion order.
  std::function<void(const GameRecord&)> on_game;
};

struct TournamentResult {
  std::vector<GameRecord> games;    // completed games in schedule order
  std::vector<GameRecord> aborted;  // games replaced by a fresh seed
  std::size_t abandoned = 0;        // scheduled games that never completed
  EloTable elo;
};

std::vector<GameResult> game_results(std::span<const GameRecord> games);

// Points scored by `name` over the games it played, divided by their number.
double score_fraction(std::span<const GameRecord> games, const std::string& name);

// Games run on separate workers with their own agents; nothing is shared
// between games.
TournamentResult run_tournament(std::span<const AgentSpec> agents,
                                std::span<const std::pair<std::size_t, std::size_t>> pairings,
                                const TournamentOptions& options);

}  // namespace penumbral
