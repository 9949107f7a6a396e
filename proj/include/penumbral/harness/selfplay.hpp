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
#include <iosfwd>
#include <random>
#include <vector>

#include "penumbral/harness/agent.hpp"
#include "penumbral/harness/game.hpp"
#include "penumbral/track/synopsis.hpp"

namespace penumbral {

struct ExampleOptions {
  std::size_t ell = 128;         // states per sampled limited set
  std::size_t cap = 200'000;     // players stop yielding examples above it
  std::size_t window = 4;
};

// Training examples from one finished game: for every action of either
// player, a synopsis of up to ell of that player's possible states (the
// true state always among them), the requested action and the final
// result from that player's side. Returns nothing for aborted or
// unreplayable records.
std::vector<SynopsisRecord> extract_examples(const GameRecord& record, const ExampleOptions& options,
                                             std::mt19937_64& rng);

struct SelfplayOptions {
  std::size_t games = 1;
  std::uint64_t seed = 1;
  AgentSpec agent = default_spec(AgentKind::kDsmcpMixture);
  TimeControl time{.per_action = 0.1};
  int turn_cap = 150;
  ExampleOptions examples;
};

struct SelfplayResult {
  std::vector<GameRecord> games;
  std::size_t examples = 0;
};

// Plays the agent against itself and appends PNBS1 records to `synopses`.
SelfplayResult selfplay(const SelfplayOptions& options, std::ostream& synopses);

}  // namespace penumbral
