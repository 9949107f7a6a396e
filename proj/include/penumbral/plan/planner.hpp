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
#include <iosfwd>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "penumbral/belief/belief.hpp"
#include "penumbral/eval/evaluator.hpp"
#include "penumbral/search/bandit.hpp"
#include "penumbral/search/node_stats.hpp"
#include "penumbral/track/possible_set.hpp"

namespace penumbral {

struct PlannerConfig {
  BanditConfig bandit;
  double caution = 0;  // fraction of playouts that give the opponent ell_cautious states
  int depth_sense = 6;
  int depth_move = 12;
  std::size_t ell = 128;
  std::size_t ell_cautious = 4;
  // Visits of the chosen arm above which a playout goes one step deeper.
  double depth_threshold = std::numeric_limits<double>::infinity();
  double virtual_loss = 1;
  std::size_t batch = 256;  // limited sets averaged into the root prior
  bool static_analysis = true;
  // Without search the action is sampled from the root prior.
  bool search = true;
  std::size_t max_playouts = std::numeric_limits<std::size_t>::max();
};

struct PlanContext {
  Color self = Color::kWhite;
  std::span<const LimitedStateSet> belief;  // opponent view, current step
  const PossibleStateSet* states = nullptr;
  // The observer's masks from before its previous move.
  std::optional<OpponentMasks> prev_opp;
  NodeStats* stats = nullptr;
  const Evaluator* evaluator = nullptr;
  HeadsetId own_headset{kTopHeadset, ""};
  HeadsetId opponent_headset{kTopHeadset, ""};
};

struct RootArm {
  Action action;
  float prior = 0;
  double n = 0;
  double q = 0;
};

struct PlanResult {
  enum class Reason { kOnlyAction, kStaticWin, kSearch, kPolicy };
  Action action;
  Reason reason = Reason::kSearch;
  std::size_t playouts = 0;
  std::vector<RootArm> root;
  // Playout steps at which the determinized state was checked against both
  // players' sets, and how many times it was missing.
  std::size_t checks = 0;
  std::size_t violations = 0;
};

// Key of the root node for a set of possible states.
std::uint64_t root_key(const PossibleStateSet& x);

// Candidate actions of the observer at its possible states: pruned senses
// or requestable moves.
std::vector<Action> root_actions(const PossibleStateSet& x);

// UCT playouts over limited sets until `deadline` or cfg.max_playouts.
// The result is the root action with the best mean value among those
// visited at least a tenth as often as the most visited one. With
// `trace` set, writes one JSON line per playout.
PlanResult choose_action(const PlanContext& ctx, const PlannerConfig& cfg,
                         Clock::time_point deadline, std::mt19937_64& rng,
                         std::ostream* trace = nullptr);

}  // namespace penumbral
