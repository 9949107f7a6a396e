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
#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include "penumbral/harness/agent.hpp"
#include "penumbral/harness/tournament.hpp"

namespace penumbral {

// Tournament file, for example:
//
//   games_per_pair = 50
//   seed = 7
//   [time]
//   per_action = 0.5
//   [[agents]]
//   kind = "DsmcpMixture"
//   c = 1.5
//   [[agents]]
//   kind = "NetworkOnly"
//   [[pairings]]
//   a = "DsmcpMixture"
//   b = "NetworkOnly"
//
// Agent keys: kind, name, c, m (number or "inf"), kappa, phi, bandit_kind
// ("ucb1" or "avop"), ell, ell_cautious, depth_sense, depth_move,
// depth_threshold, virtual_loss, batch, static_analysis, search, particles,
// belief_ell, tracker_cap, tracker_window, table_capacity, weights.
// Top-level keys: games_per_pair, seed, turn_cap, workers, max_attempts,
// [time] per_action, proportional, clock, fraction and [elo] anchor,
// rating, prior_sigma. Without [[pairings]] every pair plays.
struct TournamentConfig {
  std::vector<AgentSpec> agents;
  std::vector<std::pair<std::size_t, std::size_t>> pairings;
  TournamentOptions options;
};

// Throws std::invalid_argument naming the offending key on unknown keys,
// wrong types, unknown agent kinds or duplicate agent names.
TournamentConfig parse_tournament_config(std::string_view text);
TournamentConfig load_tournament_config(const std::filesystem::path& path);

}  // namespace penumbral
