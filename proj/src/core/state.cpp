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

#include "penumbral/core/state.hpp"

#include "penumbral/core/zobrist.hpp"

namespace penumbral {

WorldState WorldState::empty() {
  WorldState s;
  s.rehash();
  return s;
}

WorldState WorldState::initial() {
  WorldState s;
  constexpr PieceKind kBackRank[8] = {PieceKind::kRook, PieceKind::kKnight, PieceKind::kBishop,
                                      PieceKind::kQueen, PieceKind::kKing, PieceKind::kBishop,
                                      PieceKind::kKnight, PieceKind::kRook};
  for (int f = 0; f < 8; ++f) {
    s.put(Square(f, 0), {Color::kWhite, kBackRank[f]});
    s.put(Square(f, 1), {Color::kWhite, PieceKind::kPawn});
    s.put(Square(f, 6), {Color::kBlack, PieceKind::kPawn});
    s.put(Square(f, 7), {Color::kBlack, kBackRank[f]});
  }
  s.castling_ = kCastleWhiteKing | kCastleWhiteQueen | kCastleBlackKing | kCastleBlackQueen;
  s.rehash();
  return s;
}

std::optional<Piece> WorldState::piece_at(Square s) const {
  const Bitboard bit = s.bb();
  if (!(occupied() & bit)) return std::nullopt;
  const Color c = (colors_[0] & bit) ? Color::kWhite : Color::kBlack;
  for (int k = 0; k < kNumPieceKinds; ++k) {
    if (kinds_[k] & bit) return Piece{c, static_cast<PieceKind>(k)};
  }
  return std::nullopt;
}

void WorldState::put(Square s, Piece p) {
  remove(s);
  kinds_[index_of(p.kind)] |= s.bb();
  colors_[index_of(p.color)] |= s.bb();
}

void WorldState::remove(Square s) {
  const Bitboard keep = ~s.bb();
  for (auto& b : kinds_) b &= keep;
  for (auto& b : colors_) b &= keep;
}

void WorldState::rehash() { hash_ = zobrist(*this); }

std::optional<Color> WorldState::winner() const {
  const Bitboard kings = kinds_[index_of(PieceKind::kKing)];
  const bool white = kings & colors_[0];
  const bool black = kings & colors_[1];
  if (white && !black) return Color::kWhite;
  if (black && !white) return Color::kBlack;
  return std::nullopt;
}

}  // namespace penumbral
