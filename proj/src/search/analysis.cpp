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

#include "penumbral/search/analysis.hpp"

#include <algorithm>

#include "absl/container/flat_hash_map.h"
#include "penumbral/core/attacks.hpp"
#include "penumbral/core/rules.hpp"
#include "penumbral/core/zobrist.hpp"

namespace penumbral {
namespace {

constexpr Bitboard kInterior = 0x007E7E7E7E7E7E00ULL;

bool is_rim(Square s) { return !(kInterior & s.bb()); }

// Squares whose occupant is not the same in every state.
Bitboard uncertain_squares(std::span<const WorldState> states) {
  Bitboard u = 0;
  const WorldState& x0 = states[0];
  for (const auto& x : states.subspan(1)) {
    for (Color c : {Color::kWhite, Color::kBlack}) {
      for (int k = 0; k < kNumPieceKinds; ++k) {
        const auto kind = static_cast<PieceKind>(k);
        u |= x.pieces(c, kind) ^ x0.pieces(c, kind);
      }
    }
  }
  return u;
}

std::uint64_t window_key(const WorldState& x, Bitboard window) {
  std::uint64_t h = 0;
  for (Color c : {Color::kWhite, Color::kBlack}) {
    for (int k = 0; k < kNumPieceKinds; ++k) {
      h = mix64(h ^ (x.pieces(c, static_cast<PieceKind>(k)) & window));
    }
  }
  return h;
}

}  // namespace

std::vector<Action> prune_senses(std::span<const WorldState> states) {
  std::vector<Action> out;
  const Bitboard u = states.empty() ? 0 : uncertain_squares(states);
  for (int i = 0; i < 64; ++i) {
    const Square s(i);
    if (is_rim(s)) continue;
    if (attacks::sense_window(s) & u) out.push_back(Action::sense(s));
  }
  if (out.empty()) out.push_back(Action::sense(Square(1, 1)));
  return out;
}

std::optional<Action> king_capture(const WorldState& x) {
  const Color us = x.side();
  const Bitboard king = x.pieces(~us, PieceKind::kKing);
  if (!king || x.phase() != Phase::kMove) return std::nullopt;
  const Square k = lsb_square(king);
  const Bitboard occ = x.occupied();
  for (int i = 0; i < kNumPieceKinds; ++i) {
    const auto kind = static_cast<PieceKind>(i);
    // Squares from which a piece of this kind would reach k.
    const Bitboard from = kind == PieceKind::kPawn ? attacks::pawn(~us, k)
                                                   : attacks::piece(kind, us, k, occ);
    const Bitboard attackers = from & x.pieces(us, kind);
    if (!attackers) continue;
    std::optional<PieceKind> promotion;
    if (kind == PieceKind::kPawn && k.rank() == (us == Color::kWhite ? 7 : 0)) {
      promotion = PieceKind::kQueen;
    }
    return Action::move(lsb_square(attackers), k, promotion);
  }
  return std::nullopt;
}

std::optional<Action> static_win_move(std::span<const WorldState> states) {
  if (states.empty() || states[0].phase() != Phase::kMove) return std::nullopt;
  for (const auto& x : states) {
    if (!king_capture(x)) return std::nullopt;
  }
  const WorldState& x0 = states[0];
  const Color us = x0.side();
  std::vector<Action> requests;
  requestable_actions(x0, &requests);
  for (const Action& r : requests) {
    if (!r.is_move()) continue;
    bool wins = true;
    for (const auto& x : states) {
      const Action done = substitute_move(x, r);
      if (!done.is_move() || !(x.pieces(~us, PieceKind::kKing) & done.to.bb())) {
        wins = false;
        break;
      }
    }
    if (wins) return r;
  }
  return std::nullopt;
}

std::optional<Action> static_win_sense(std::span<const WorldState> states,
                                       std::size_t max_states) {
  if (states.empty() || states[0].phase() != Phase::kSense || states.size() > max_states) {
    return std::nullopt;
  }
  // The move that follows is judged from the move phase of each state.
  std::vector<WorldState> moving;
  moving.reserve(states.size());
  for (const auto& x : states) {
    moving.push_back(apply_action(x, Action::sense(Square(0))).state);
    if (!king_capture(moving.back())) return std::nullopt;
  }
  if (static_win_move(moving)) return prune_senses(states).front();
  absl::flat_hash_map<std::uint64_t, std::vector<WorldState>> cells;
  for (const Action& sense : prune_senses(states)) {
    const Bitboard window = attacks::sense_window(sense.from);
    cells.clear();
    for (const auto& x : moving) cells[window_key(x, window)].push_back(x);
    bool wins = true;
    for (const auto& [key, cell] : cells) {
      if (!static_win_move(cell)) {
        wins = false;
        break;
      }
    }
    if (wins) return sense;
  }
  return std::nullopt;
}

std::optional<Action> static_win(std::span<const WorldState> states) {
  if (states.empty()) return std::nullopt;
  return states[0].phase() == Phase::kSense ? static_win_sense(states) : static_win_move(states);
}

}  // namespace penumbral
