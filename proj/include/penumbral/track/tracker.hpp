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
#include <deque>
#include <optional>

#include "penumbral/core/action.hpp"
#include "penumbral/core/state.hpp"
#include "penumbral/track/errors.hpp"
#include "penumbral/track/limited_set.hpp"
#include "penumbral/track/possible_set.hpp"

namespace penumbral {

// Successor set after one action. With `own_action` set the observer acted:
// every state is pushed through that request and kept when the observation
// matches. Without it the opponent acted: a sense only flips the phase, a
// move branches over every executable opponent move whose capture square
// matches. Throws TrackingError when nothing survives. The result inherits
// the cap of `x` and reports overflow instead of growing past it.
PossibleStateSet expand_filter(const PossibleStateSet& x, const std::optional<Action>& own_action,
                               const Observation& obs);

struct TrackedStep {
  PossibleStateSet states;
  // Set when the observer acted on the transition out of this step, with
  // what the observer saw. A shared successor alone does not prove a state:
  // capturing on a square and moving onto it empty can land in one state.
  std::optional<Action> own_action;
  Observation own_obs;
};

// Backward pass: drops states with no successor in the following step,
// newest first, and stops at the first step left unchanged. Returns the
// number of steps that shrank. Throws TrackingError if a step empties.
std::size_t retro_filter(std::deque<TrackedStep>& history);

// Exact possible-state tracking for one player.
class Tracker {
 public:
  struct Config {
    std::size_t cap = PossibleStateSet::kDefaultCap;
    // Steps kept for backward filtering; older snapshots are dropped.
    std::size_t window_steps = 32;
  };

  explicit Tracker(Color self) : Tracker(self, Config{}) {}
  Tracker(Color self, Config cfg);

  void reset(const WorldState& initial);
  void observe_own(const Action& requested, const Observation& obs);
  // `obs` is what this player saw of the opponent's action; empty for a sense.
  void observe_opponent(const Observation& obs);

  Color self() const { return self_; }
  const PossibleStateSet& current() const { return history_.back().states; }
  // Absolute step numbers; step 0 is the initial position.
  std::size_t current_index() const { return first_ + history_.size() - 1; }
  std::size_t first_index() const { return first_; }
  bool holds(std::size_t index) const {
    return index >= first_ && index <= current_index();
  }
  const TrackedStep& step(std::size_t index) const { return history_[index - first_]; }

  // Set once the state count passed the cap; tracking then stops.
  bool overflowed() const { return overflowed_; }
  std::size_t max_size() const { return max_size_; }
  const std::optional<OpponentMasks>& prev_opp() const { return prev_opp_; }

 private:
  void push(PossibleStateSet next, std::optional<Action> own_action, const Observation& obs);

  Color self_;
  Config cfg_;
  std::deque<TrackedStep> history_;
  std::size_t first_ = 0;
  bool overflowed_ = false;
  std::size_t max_size_ = 0;
  std::optional<OpponentMasks> prev_opp_;
};

// The observer's own pieces, castling rights, side and phase, kept without
// any opposing pieces. Enough to list requestable actions.
class OwnView {
 public:
  explicit OwnView(Color self);

  void on_own(const Observation& obs);
  void on_opponent(const Observation& obs);

  const WorldState& state() const { return state_; }
  std::vector<Action> requestable() const;

 private:
  Color self_;
  WorldState state_;
};

}  // namespace penumbral
