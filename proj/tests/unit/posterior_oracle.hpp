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
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "penumbral/belief/belief.hpp"
#include "penumbral/core/notation.hpp"
#include "penumbral/core/rules.hpp"
#include "penumbral/eval/evaluator.hpp"

namespace penumbral::testing {

// Two turns: White senses and plays e2e4, Black senses and answers, White
// senses d6. Black's answer is hidden from White apart from that sense.
inline constexpr const char* kTwoTurnScript[] = {"sense:e6", "move:e2e4", "sense:d4",
                                                 "move:g8f6", "sense:d6"};

// Exact distribution over the true state after White's second sense, given
// White's observations, when Black requests uniformly among its requestable
// moves. Black's sense leaves the placement alone, so the histories are the
// requests.
inline std::map<std::string, double> exact_two_turn_posterior() {
  std::vector<WorldState> truth{WorldState::initial()};
  std::vector<Step> steps;
  for (const char* text : kTwoTurnScript) {
    steps.push_back(apply_action(truth.back(), *parse_action(text)));
    truth.push_back(steps.back().state);
  }
  const WorldState& before_black_move = truth[3];
  const Observation white_saw_move = steps[3].other;
  const Action white_sense = *parse_action(kTwoTurnScript[4]);
  const Observation white_saw_sense = steps[4].actor;

  std::map<std::string, double> weight;
  double total = 0;
  for (const Action& r : requestable_actions(before_black_move)) {
    const Step black = apply_action(before_black_move, r);
    if (black.other != white_saw_move) continue;
    const Step sensed = apply_action(black.state, white_sense);
    if (sensed.actor != white_saw_sense) continue;
    weight[board_fen(sensed.state)] += 1;
    total += 1;
  }
  for (auto& [k, w] : weight) w /= total;
  return weight;
}

struct PosteriorCheck {
  double total_variation = 1;
  std::size_t particles = 0;
  std::size_t not_singleton = 0;
  std::size_t fallbacks = 0;
};

// Runs White's belief filter over the script with a uniform opponent model
// and compares the particles' collapsed states with the exact posterior.
inline PosteriorCheck check_two_turn_posterior(std::size_t particles, std::uint64_t seed) {
  BeliefConfig cfg;
  cfg.particles = particles;
  OpponentModel model;
  model.evaluator = std::make_shared<HeuristicEvaluator>();
  model.bandit.m = 0;
  BeliefFilter belief(Color::kWhite, cfg, model);
  Tracker white(Color::kWhite);
  Tracker black(Color::kBlack);
  belief.reset(WorldState::initial());
  NodeStats stats(1 << 12);
  std::mt19937_64 rng(seed);
  const auto far = Clock::now() + std::chrono::hours(1);

  WorldState s = WorldState::initial();
  for (const char* text : kTwoTurnScript) {
    const Action a = *parse_action(text);
    const Step step = apply_action(s, a);
    if (s.side() == Color::kWhite) {
      white.observe_own(a, step.actor);
    } else {
      white.observe_opponent(step.other);
    }
    s = step.state;
    belief.filter(white);
    belief.repopulate(white, stats, far, rng);
  }

  PosteriorCheck out;
  const PossibleStateSet& x = white.current();
  std::map<std::string, double> seen;
  for (const LimitedStateSet& l : belief.at(white.current_index())) {
    std::vector<const WorldState*> both;
    for (const auto& m : l.states) {
      if (x.contains(m)) both.push_back(&m);
    }
    if (both.size() != 1) {
      ++out.not_singleton;
      continue;
    }
    seen[board_fen(*both[0])] += 1;
    ++out.particles;
  }
  out.fallbacks = belief.fallbacks();
  if (out.particles == 0) return out;
  for (auto& [k, v] : seen) v /= static_cast<double>(out.particles);

  const auto exact = exact_two_turn_posterior();
  double tv = 0;
  for (const auto& [k, p] : exact) {
    const auto it = seen.find(k);
    tv += std::abs(p - (it == seen.end() ? 0.0 : it->second));
  }
  for (const auto& [k, q] : seen) {
    if (!exact.contains(k)) tv += q;
  }
  out.total_variation = tv / 2;
  return out;
}

}  // namespace penumbral::testing
