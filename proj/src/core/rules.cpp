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

#include "penumbral/core/rules.hpp"

#include <cstdlib>
#include <stdexcept>

#include "penumbral/core/attacks.hpp"
#include "penumbral/core/zobrist.hpp"

namespace penumbral {
namespace {

constexpr PieceKind kPromotions[] = {PieceKind::kKnight, PieceKind::kBishop, PieceKind::kRook,
                                     PieceKind::kQueen};

int home_rank(Color c) { return c == Color::kWhite ? 0 : 7; }
int last_rank(Color c) { return c == Color::kWhite ? 7 : 0; }
int forward(Color c) { return c == Color::kWhite ? 8 : -8; }

std::uint8_t king_side_right(Color c) {
  return c == Color::kWhite ? kCastleWhiteKing : kCastleBlackKing;
}
std::uint8_t queen_side_right(Color c) {
  return c == Color::kWhite ? kCastleWhiteQueen : kCastleBlackQueen;
}

// Rights lost when a piece leaves or lands on `s`.
std::uint8_t rights_cleared_by(Square s) {
  switch (s.index()) {
    case 0: return kCastleWhiteQueen;
    case 4: return kCastleWhiteKing | kCastleWhiteQueen;
    case 7: return kCastleWhiteKing;
    case 56: return kCastleBlackQueen;
    case 60: return kCastleBlackKing | kCastleBlackQueen;
    case 63: return kCastleBlackKing;
    default: return 0;
  }
}

// Castle geometry for a king move; nullopt if the move is not a castle shape.
struct Castle {
  std::uint8_t right;
  Square rook_from;
  Square rook_to;
};

std::optional<Castle> castle_shape(const WorldState& s, Color c, Square from, Square to) {
  const int r = home_rank(c);
  if (from != Square(4, r) || to.rank() != r) return std::nullopt;
  if (!(s.pieces(c, PieceKind::kKing) & from.bb())) return std::nullopt;
  if (to.file() == 6) return Castle{king_side_right(c), Square(7, r), Square(5, r)};
  if (to.file() == 2) return Castle{queen_side_right(c), Square(0, r), Square(3, r)};
  return std::nullopt;
}

bool castle_open(const WorldState& s, const Castle& castle, Bitboard occupied) {
  const Square king = Square(4, castle.rook_from.rank());
  return (s.castling() & castle.right) && !(attacks::between(king, castle.rook_from) & occupied);
}

void add_pawn_move(Square from, Square to, Color c, bool all_promotions,
                   std::vector<Action>* out) {
  if (to.rank() != last_rank(c)) {
    out->push_back(Action::move(from, to));
  } else if (all_promotions) {
    for (PieceKind k : kPromotions) out->push_back(Action::move(from, to, k));
  } else {
    out->push_back(Action::move(from, to, PieceKind::kQueen));
  }
}

// Pawn pushes for `c` given the squares treated as occupied.
void pawn_pushes(Square from, Color c, Bitboard occupied, bool all_promotions,
                 std::vector<Action>* out) {
  const Square one(from.index() + forward(c));
  if (occupied & one.bb()) return;
  add_pawn_move(from, one, c, all_promotions, out);
  const int start = c == Color::kWhite ? 1 : 6;
  if (from.rank() == start) {
    const Square two(one.index() + forward(c));
    if (!(occupied & two.bb())) out->push_back(Action::move(from, two));
  }
}

// Shared generator. With `blind` set the opposing pieces are ignored and
// every diagonal pawn step onto a non-own square is included.
void generate(const WorldState& s, bool blind, std::vector<Action>* out) {
  const Color us = s.side();
  const Bitboard own = s.pieces(us);
  const Bitboard opp = blind ? 0 : s.pieces(~us);
  const Bitboard occupied = own | opp;
  const bool all_promotions = !blind;

  for (Bitboard b = s.pieces(us, PieceKind::kPawn); b;) {
    const Square from = pop_lsb(b);
    pawn_pushes(from, us, occupied, all_promotions, out);
    Bitboard diag = attacks::pawn(us, from) & ~own;
    if (!blind) {
      Bitboard targets = opp;
      if (s.ep()) targets |= s.ep()->bb();
      diag &= targets;
    }
    while (diag) add_pawn_move(from, pop_lsb(diag), us, all_promotions, out);
  }
  for (PieceKind k : {PieceKind::kKnight, PieceKind::kBishop, PieceKind::kRook,
                      PieceKind::kQueen, PieceKind::kKing}) {
    for (Bitboard b = s.pieces(us, k); b;) {
      const Square from = pop_lsb(b);
      Bitboard targets = attacks::piece(k, us, from, occupied) & ~own;
      while (targets) out->push_back(Action::move(from, pop_lsb(targets)));
    }
  }
  const int r = home_rank(us);
  const Square king_home(4, r);
  for (Square to : {Square(6, r), Square(2, r)}) {
    const auto castle = castle_shape(s, us, king_home, to);
    if (castle && castle_open(s, *castle, occupied)) out->push_back(Action::move(king_home, to));
  }
  out->push_back(Action::pass());
}

// Squares a non-castling move from `from` may reach in `s`.
Bitboard pseudo_targets(const WorldState& s, Square from, Piece p) {
  const Bitboard own = s.pieces(p.color);
  const Bitboard occupied = s.occupied();
  if (p.kind != PieceKind::kPawn) return attacks::piece(p.kind, p.color, from, occupied) & ~own;
  Bitboard targets = attacks::pawn(p.color, from) & s.pieces(~p.color);
  if (s.ep() && (attacks::pawn(p.color, from) & s.ep()->bb())) targets |= s.ep()->bb();
  const Square one(from.index() + forward(p.color));
  if (!(occupied & one.bb())) {
    targets |= one.bb();
    const int start = p.color == Color::kWhite ? 1 : 6;
    if (from.rank() == start) {
      const Square two(one.index() + forward(p.color));
      if (!(occupied & two.bb())) targets |= two.bb();
    }
  }
  return targets;
}

bool promotion_fits(Piece p, Square to, std::optional<PieceKind> promo) {
  const bool promoting = p.kind == PieceKind::kPawn && to.rank() == last_rank(p.color);
  if (!promoting) return !promo.has_value();
  return promo && *promo != PieceKind::kPawn && *promo != PieceKind::kKing;
}

}  // namespace

void legal_actions(const WorldState& s, std::vector<Action>* out) {
  out->clear();
  if (s.is_terminal()) return;
  if (s.phase() == Phase::kSense) {
    for (int i = 0; i < 64; ++i) out->push_back(Action::sense(Square(i)));
    return;
  }
  generate(s, /*blind=*/false, out);
}

std::vector<Action> legal_actions(const WorldState& s) {
  std::vector<Action> out;
  legal_actions(s, &out);
  return out;
}

void requestable_actions(const WorldState& s, std::vector<Action>* out) {
  out->clear();
  if (!s.pieces(s.side(), PieceKind::kKing)) return;
  if (s.phase() == Phase::kSense) {
    for (int i = 0; i < 64; ++i) out->push_back(Action::sense(Square(i)));
    return;
  }
  generate(s, /*blind=*/true, out);
}

std::vector<Action> requestable_actions(const WorldState& s) {
  std::vector<Action> out;
  requestable_actions(s, &out);
  return out;
}

Action substitute_move(const WorldState& s, const Action& requested) {
  if (!requested.is_move()) return Action::pass();
  const auto piece = s.piece_at(requested.from);
  if (!piece || piece->color != s.side()) return Action::pass();

  Action req = requested;
  if (piece->kind == PieceKind::kPawn && req.to.rank() == last_rank(piece->color) &&
      !req.promotion) {
    req.promotion = PieceKind::kQueen;
  }

  if (piece->kind == PieceKind::kKing) {
    if (const auto castle = castle_shape(s, piece->color, req.from, req.to)) {
      if (req.promotion || !castle_open(s, *castle, s.occupied())) return Action::pass();
      return req;
    }
  }
  if (!promotion_fits(*piece, req.to, req.promotion)) return Action::pass();

  const Bitboard targets = pseudo_targets(s, req.from, *piece);
  if (targets & req.to.bb()) return req;

  const bool slides = piece->kind == PieceKind::kPawn || piece->kind == PieceKind::kBishop ||
                      piece->kind == PieceKind::kRook || piece->kind == PieceKind::kQueen;
  if (!slides) return Action::pass();

  // The executed move stops on the reachable path square closest to the request.
  const Bitboard path = attacks::between(req.from, req.to) & targets;
  if (!path) return Action::pass();
  const Square stop = req.to.index() > req.from.index() ? msb_square(path) : lsb_square(path);
  // A promotion piece on a non-promoting square cannot execute.
  if (!promotion_fits(*piece, stop, req.promotion)) return Action::pass();
  return Action::move(req.from, stop, req.promotion);
}

OptSquare capture_square(const WorldState& s, const Action& executed) {
  if (!executed.is_move()) return std::nullopt;
  const Color us = s.side();
  if (s.pieces(~us) & executed.to.bb()) return executed.to;
  if (s.ep() && executed.to == *s.ep() &&
      (s.pieces(us, PieceKind::kPawn) & executed.from.bb()) &&
      executed.from.file() != executed.to.file()) {
    return Square(executed.to.index() - forward(us));
  }
  return std::nullopt;
}

SenseResult sense_at(const WorldState& s, Square center) {
  SenseResult r;
  r.center = center;
  r.window = attacks::sense_window(center);
  for (int k = 0; k < kNumPieceKinds; ++k) {
    r.kinds[k] = s.pieces(static_cast<PieceKind>(k)) & r.window;
  }
  r.colors[0] = s.pieces(Color::kWhite) & r.window;
  r.colors[1] = s.pieces(Color::kBlack) & r.window;
  return r;
}

Bitboard attacked_by(const WorldState& s, Color c) {
  const Bitboard occupied = s.occupied();
  Bitboard result = attacks::pawns(c, s.pieces(c, PieceKind::kPawn));
  for (PieceKind k : {PieceKind::kKnight, PieceKind::kBishop, PieceKind::kRook,
                      PieceKind::kQueen, PieceKind::kKing}) {
    for (Bitboard b = s.pieces(c, k); b;) result |= attacks::piece(k, c, pop_lsb(b), occupied);
  }
  return result;
}

Step apply_action(const WorldState& s, const Action& action) {
  if (s.is_terminal()) throw std::logic_error("apply_action on a terminal state");
  const bool sense_phase = s.phase() == Phase::kSense;
  if (sense_phase != action.is_sense()) {
    throw std::logic_error("action " + to_string(action) + " does not fit the current phase");
  }

  Step step{s, {}, {}};
  WorldState& next = step.state;
  const Color us = s.side();
  ZobristHash delta = 0;

  if (sense_phase) {
    next.set_phase(Phase::kMove);
    next.set_hash(zobrist_update(s.hash(), zobrist_phase()));
    step.actor.sense = sense_at(s, action.from);
    return step;
  }

  const Action executed = substitute_move(s, action);
  const OptSquare captured = capture_square(s, executed);
  std::uint8_t rights = s.castling();
  OptSquare ep;

  if (executed.is_move()) {
    const Piece mover = *s.piece_at(executed.from);
    if (captured) {
      const Piece victim = *s.piece_at(*captured);
      delta ^= zobrist_piece(victim, *captured);
      next.remove(*captured);
    }
    delta ^= zobrist_piece(mover, executed.from);
    next.remove(executed.from);
    const Piece placed = executed.promotion ? Piece{us, *executed.promotion} : mover;
    delta ^= zobrist_piece(placed, executed.to);
    next.put(executed.to, placed);

    if (mover.kind == PieceKind::kKing) {
      if (const auto castle = castle_shape(s, us, executed.from, executed.to)) {
        const Piece rook{us, PieceKind::kRook};
        delta ^= zobrist_piece(rook, castle->rook_from) ^ zobrist_piece(rook, castle->rook_to);
        next.remove(castle->rook_from);
        next.put(castle->rook_to, rook);
      }
    }
    rights &= static_cast<std::uint8_t>(~(rights_cleared_by(executed.from) |
                                          rights_cleared_by(executed.to)));

    // Every double push records the skipped square, capturable or not.
    if (mover.kind == PieceKind::kPawn &&
        std::abs(executed.to.index() - executed.from.index()) == 16) {
      ep = Square((executed.from.index() + executed.to.index()) / 2);
    }
  }

  if (s.ep()) delta ^= zobrist_ep(*s.ep());
  if (ep) delta ^= zobrist_ep(*ep);
  delta ^= zobrist_castling(s.castling()) ^ zobrist_castling(rights);
  delta ^= zobrist_side() ^ zobrist_phase();

  next.set_castling(rights);
  next.set_ep(ep);
  next.set_side(~us);
  next.set_phase(Phase::kSense);
  next.set_halfturn(s.halfturn() + 1);
  next.prev(us) = s.last(us);
  if (executed.is_move()) {
    next.last(us) = MoveMeta{executed.from, executed.to, captured};
  } else {
    next.last(us) = MoveMeta{};
  }
  next.set_hash(zobrist_update(s.hash(), delta));

  step.actor.executed = executed;
  step.actor.capture = captured;
  step.other.capture = captured;
  return step;
}

bool observation_matches(const WorldState& s, const Action& action, const Observation& obs,
                         Role role) {
  if (s.is_terminal()) return false;
  const bool sense_phase = s.phase() == Phase::kSense;
  if (sense_phase != action.is_sense()) return false;
  if (sense_phase) {
    if (role == Role::kOther) return !obs.sense && !obs.executed && !obs.capture;
    return obs.sense && !obs.executed && !obs.capture && *obs.sense == sense_at(s, action.from);
  }
  if (obs.sense) return false;
  const Action executed = substitute_move(s, action);
  const OptSquare captured = capture_square(s, executed);
  if (obs.capture != captured) return false;
  if (role == Role::kOther) return !obs.executed;
  return obs.executed && *obs.executed == executed;
}

}  // namespace penumbral
