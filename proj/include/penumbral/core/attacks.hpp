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

#include "penumbral/core/types.hpp"

namespace penumbral::attacks {

Bitboard knight(Square s);
Bitboard king(Square s);
// Squares a pawn of `c` on `s` attacks diagonally.
Bitboard pawn(Color c, Square s);
Bitboard bishop(Square s, Bitboard occupied);
Bitboard rook(Square s, Bitboard occupied);
inline Bitboard queen(Square s, Bitboard occupied) {
  return bishop(s, occupied) | rook(s, occupied);
}
Bitboard piece(PieceKind kind, Color c, Square s, Bitboard occupied);

// Squares strictly between a and b on a shared line; empty when not aligned.
Bitboard between(Square a, Square b);

// Union of pawn attacks for a set of pawns.
Bitboard pawns(Color c, Bitboard pawns);

// The 3x3 window centred on s, clipped at the board edges.
Bitboard sense_window(Square s);

}  // namespace penumbral::attacks
