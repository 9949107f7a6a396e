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

#include "penumbral/core/attacks.hpp"

#include <array>
#include <cstdlib>

namespace penumbral::attacks {
namespace {

// Direction order: N, S, E, W, NE, NW, SE, SW.
constexpr std::array<int, 8> kFileStep = {0, 0, 1, -1, 1, -1, 1, -1};
constexpr std::array<int, 8> kRankStep = {1, -1, 0, 0, 1, 1, -1, -1};
// Rays growing toward higher indices use lsb to find the nearest blocker.
constexpr std::array<bool, 8> kPositive = {true, false, true, false, true, true, false, false};

struct Tables {
  std::array<Bitboard, 64> knight{};
  std::array<Bitboard, 64> king{};
  std::array<std::array<Bitboard, 64>, 2> pawn{};
  std::array<std::array<Bitboard, 64>, 8> ray{};
  std::array<std::array<Bitboard, 64>, 64> between{};
  std::array<Bitboard, 64> window{};

  constexpr Tables() {
    auto on_board = [](int f, int r) { return f >= 0 && f < 8 && r >= 0 && r < 8; };
    constexpr int kKnightDf[8] = {1, 2, 2, 1, -1, -2, -2, -1};
    constexpr int kKnightDr[8] = {2, 1, -1, -2, -2, -1, 1, 2};
    for (int s = 0; s < 64; ++s) {
      const int f = s & 7;
      const int r = s >> 3;
      for (int i = 0; i < 8; ++i) {
        if (on_board(f + kKnightDf[i], r + kKnightDr[i])) {
          knight[s] |= Bitboard{1} << ((r + kKnightDr[i]) * 8 + f + kKnightDf[i]);
        }
      }
      for (int df = -1; df <= 1; ++df) {
        for (int dr = -1; dr <= 1; ++dr) {
          if (!on_board(f + df, r + dr)) continue;
          const Bitboard bit = Bitboard{1} << ((r + dr) * 8 + f + df);
          window[s] |= bit;
          if (df != 0 || dr != 0) king[s] |= bit;
        }
      }
      for (int df : {-1, 1}) {
        if (on_board(f + df, r + 1)) pawn[0][s] |= Bitboard{1} << ((r + 1) * 8 + f + df);
        if (on_board(f + df, r - 1)) pawn[1][s] |= Bitboard{1} << ((r - 1) * 8 + f + df);
      }
      for (int d = 0; d < 8; ++d) {
        int tf = f + kFileStep[d];
        int tr = r + kRankStep[d];
        Bitboard acc = 0;
        while (on_board(tf, tr)) {
          const int t = tr * 8 + tf;
          between[s][t] = acc;
          acc |= Bitboard{1} << t;
          tf += kFileStep[d];
          tr += kRankStep[d];
        }
        ray[d][s] = acc;
      }
    }
  }
};

constexpr Tables kTables;

Bitboard slide(Square s, Bitboard occupied, int first_dir, int last_dir) {
  Bitboard result = 0;
  for (int d = first_dir; d <= last_dir; ++d) {
    Bitboard ray = kTables.ray[d][s.index()];
    const Bitboard blockers = ray & occupied;
    if (blockers) {
      const Square nearest = kPositive[d] ? lsb_square(blockers) : msb_square(blockers);
      ray ^= kTables.ray[d][nearest.index()];
    }
    result |= ray;
  }
  return result;
}

}  // namespace

Bitboard knight(Square s) { return kTables.knight[s.index()]; }
Bitboard king(Square s) { return kTables.king[s.index()]; }
Bitboard pawn(Color c, Square s) { return kTables.pawn[index_of(c)][s.index()]; }
Bitboard bishop(Square s, Bitboard occupied) { return slide(s, occupied, 4, 7); }
Bitboard rook(Square s, Bitboard occupied) { return slide(s, occupied, 0, 3); }

Bitboard piece(PieceKind kind, Color c, Square s, Bitboard occupied) {
  switch (kind) {
    case PieceKind::kPawn: return pawn(c, s);
    case PieceKind::kKnight: return knight(s);
    case PieceKind::kBishop: return bishop(s, occupied);
    case PieceKind::kRook: return rook(s, occupied);
    case PieceKind::kQueen: return queen(s, occupied);
    case PieceKind::kKing: return king(s);
  }
  return 0;
}

Bitboard between(Square a, Square b) { return kTables.between[a.index()][b.index()]; }

Bitboard pawns(Color c, Bitboard pawns) {
  if (c == Color::kWhite) {
    return ((pawns & ~kFileA) << 7) | ((pawns & ~kFileH) << 9);
  }
  return ((pawns & ~kFileA) >> 9) | ((pawns & ~kFileH) >> 7);
}

Bitboard sense_window(Square s) { return kTables.window[s.index()]; }

}  // namespace penumbral::attacks
