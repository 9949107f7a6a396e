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

#include <vector>

#include "penumbral/core/action.hpp"
#include "penumbral/core/state.hpp"

namespace penumbral {

// Every action that can actually execute: 64 senses in the sense phase; in
// the move phase all pseudo-legal moves (every promotion piece, castles that
// only need rights and empty squares between king and rook) plus Pass.
// Empty for terminal states.
std::vector<Action> legal_actions(const WorldState& s);
void legal_actions(const WorldState& s, std::vector<Action>* out);

// Moves a player may ask for, computed from what that player knows: moves on
// the board with opposing pieces removed, diagonal pawn moves onto any
// square not holding an own piece, and Pass. Promotions are requested as
// queens only. Identical across every state the player cannot tell apart.
// Empty when the player to act has no king.
std::vector<Action> requestable_actions(const WorldState& s);
void requestable_actions(const WorldState& s, std::vector<Action>* out);

// The move that actually executes for a requested move or Pass. Sliders and
// pawn pushes stop on the farthest reachable square along the requested
// path, blocked castles and unusable requests become Pass. A move to the
// last rank without a promotion piece promotes to a queen.
Action substitute_move(const WorldState& s, const Action& requested);

struct Step {
  WorldState state;
  Observation actor;
  Observation other;
};

// Applies a sense, a requested move or Pass. Moves go through
// substitute_move first. Throws std::logic_error on a phase mismatch or a
// terminal state.
Step apply_action(const WorldState& s, const Action& action);

enum class Role { kActor, kOther };

// True when taking `action` in `s` would give the player in `role` exactly
// the observation `obs`.
bool observation_matches(const WorldState& s, const Action& action, const Observation& obs,
                         Role role);

// Observation the actor gets from sensing `center` in `s`.
SenseResult sense_at(const WorldState& s, Square center);

// Square of the captured piece if executing `executed` captures anything.
// En passant reports the square of the captured pawn.
OptSquare capture_square(const WorldState& s, const Action& executed);

// Squares attacked by `c`'s pieces with the given occupancy.
Bitboard attacked_by(const WorldState& s, Color c);

}  // namespace penumbral
