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

#include "penumbral/track/tracker.hpp"

#include <vector>

#include "penumbral/core/notation.hpp"
#include "penumbral/core/rules.hpp"

namespace penumbral {
namespace {

WorldState flipped_phase(const WorldState& s) {
  // Any sense gives the same successor state.
  return apply_action(s, Action::sense(Square(0))).state;
}

bool has_successor_in(const WorldState& x, const TrackedStep& step, const PossibleStateSet& next,
                      std::vector<Action>* scratch) {
  if (x.is_terminal()) return false;
  if (step.own_action) {
    return observation_matches(x, *step.own_action, step.own_obs, Role::kActor) &&
           next.contains(apply_action(x, *step.own_action).state);
  }
  if (x.phase() == Phase::kSense) return next.contains(flipped_phase(x));
  legal_actions(x, scratch);
  for (const auto& a : *scratch) {
    if (next.contains(apply_action(x, a).state)) return true;
  }
  return false;
}

}  // namespace

PossibleStateSet expand_filter(const PossibleStateSet& x, const std::optional<Action>& own_action,
                               const Observation& obs) {
  PossibleStateSet out(x.cap());
  std::vector<Action> actions;
  for (const auto& s : x) {
    if (s.is_terminal()) continue;
    if (own_action) {
      if (observation_matches(s, *own_action, obs, Role::kActor)) {
        out.insert(apply_action(s, *own_action).state);
      }
    } else if (s.phase() == Phase::kSense) {
      if (!obs.sense && !obs.executed && !obs.capture) out.insert(flipped_phase(s));
    } else {
      legal_actions(s, &actions);
      for (const auto& a : actions) {
        if (capture_square(s, a) != obs.capture) continue;
        out.insert(apply_action(s, a).state);
        if (out.overflowed()) break;
      }
    }
    if (out.overflowed()) break;
  }
  if (out.empty()) {
    throw TrackingError("no possible state matches the observation after " +
                        (own_action ? to_string(*own_action) : std::string("opponent action")));
  }
  return out;
}

std::size_t retro_filter(std::deque<TrackedStep>& history) {
  std::size_t changed = 0;
  std::vector<Action> scratch;
  for (std::size_t i = history.size(); i-- > 1;) {
    const PossibleStateSet& next = history[i].states;
    TrackedStep& step = history[i - 1];
    const std::size_t removed = step.states.retain([&](const WorldState& x) {
      return has_successor_in(x, step, next, &scratch);
    });
    if (removed == 0) break;
    if (step.states.empty()) throw TrackingError("backward filtering emptied a step");
    ++changed;
  }
  return changed;
}

Tracker::Tracker(Color self, Config cfg) : self_(self), cfg_(cfg) { reset(WorldState::initial()); }

void Tracker::reset(const WorldState& initial) {
  history_.clear();
  first_ = 0;
  overflowed_ = false;
  prev_opp_.reset();
  PossibleStateSet start(cfg_.cap);
  start.insert(initial);
  history_.push_back({std::move(start), std::nullopt, {}});
  max_size_ = 1;
}

void Tracker::push(PossibleStateSet next, std::optional<Action> own_action,
                   const Observation& obs) {
  history_.back().own_action = std::move(own_action);
  history_.back().own_obs = obs;
  if (next.overflowed()) overflowed_ = true;
  max_size_ = std::max(max_size_, next.size());
  history_.push_back({std::move(next), std::nullopt, {}});
  if (!overflowed_) retro_filter(history_);
  while (history_.size() > cfg_.window_steps && history_.size() > 1) {
    history_.pop_front();
    ++first_;
  }
}

void Tracker::observe_own(const Action& requested, const Observation& obs) {
  if (overflowed_) return;
  if (!requested.is_sense()) prev_opp_ = opponent_masks(current().states(), self_);
  push(expand_filter(current(), requested, obs), requested, obs);
}

void Tracker::observe_opponent(const Observation& obs) {
  if (overflowed_) return;
  push(expand_filter(current(), std::nullopt, obs), std::nullopt, obs);
}

OwnView::OwnView(Color self) : self_(self), state_(WorldState::initial()) {
  for (Bitboard b = state_.pieces(~self); b;) state_.remove(pop_lsb(b));
  state_.rehash();
}

void OwnView::on_own(const Observation& obs) {
  if (obs.sense) {
    state_.set_phase(Phase::kMove);
    state_.rehash();
    return;
  }
  if (obs.executed && obs.executed->is_move()) {
    const Action& m = *obs.executed;
    const auto piece = state_.piece_at(m.from);
    if (piece) {
      state_.remove(m.from);
      state_.put(m.to, m.promotion ? Piece{self_, *m.promotion} : *piece);
      const int r = m.from.rank();
      if (piece->kind == PieceKind::kKing && m.from.file() == 4 &&
          (m.to.file() == 6 || m.to.file() == 2) && m.to.rank() == r) {
        const bool king_side = m.to.file() == 6;
        state_.remove(Square(king_side ? 7 : 0, r));
        state_.put(Square(king_side ? 5 : 3, r), {self_, PieceKind::kRook});
      }
      std::uint8_t rights = state_.castling();
      for (Square s : {m.from, m.to}) {
        if (s == Square(4, 0)) rights &= ~(kCastleWhiteKing | kCastleWhiteQueen);
        if (s == Square(7, 0)) rights &= ~kCastleWhiteKing;
        if (s == Square(0, 0)) rights &= ~kCastleWhiteQueen;
        if (s == Square(4, 7)) rights &= ~(kCastleBlackKing | kCastleBlackQueen);
        if (s == Square(7, 7)) rights &= ~kCastleBlackKing;
        if (s == Square(0, 7)) rights &= ~kCastleBlackQueen;
      }
      state_.set_castling(rights);
    }
  }
  state_.set_side(~self_);
  state_.set_phase(Phase::kSense);
  state_.rehash();
}

void OwnView::on_opponent(const Observation& obs) {
  if (state_.phase() == Phase::kSense && state_.side() != self_) {
    state_.set_phase(Phase::kMove);
  } else {
    if (obs.capture) {
      state_.remove(*obs.capture);
      std::uint8_t rights = state_.castling();
      const Square c = *obs.capture;
      if (c == Square(7, 0)) rights &= ~kCastleWhiteKing;
      if (c == Square(0, 0)) rights &= ~kCastleWhiteQueen;
      if (c == Square(7, 7)) rights &= ~kCastleBlackKing;
      if (c == Square(0, 7)) rights &= ~kCastleBlackQueen;
      if (c == Square(4, 0)) rights &= ~(kCastleWhiteKing | kCastleWhiteQueen);
      if (c == Square(4, 7)) rights &= ~(kCastleBlackKing | kCastleBlackQueen);
      state_.set_castling(rights);
    }
    state_.set_side(self_);
    state_.set_phase(Phase::kSense);
  }
  state_.rehash();
}

std::vector<Action> OwnView::requestable() const { return requestable_actions(state_); }

}  // namespace penumbral
