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

#include "penumbral/core/zobrist.hpp"

#include <array>
#include <random>

namespace penumbral {
namespace {

struct Keys {
  std::array<std::array<ZobristHash, 64>, 12> piece{};
  ZobristHash side = 0;
  ZobristHash phase = 0;
  std::array<ZobristHash, 16> castling{};
  std::array<ZobristHash, 64> ep{};

  Keys() {
    // mt19937_64 output is fixed by the standard, so keys agree across builds.
    std::mt19937_64 gen(0x70656E756D6272ULL);
    for (auto& row : piece) {
      for (auto& k : row) k = gen();
    }
    side = gen();
    phase = gen();
    castling[0] = 0;
    for (std::size_t i = 1; i < castling.size(); ++i) castling[i] = gen();
    for (auto& k : ep) k = gen();
  }
};

const Keys& keys() {
  static const Keys k;
  return k;
}

}  // namespace

ZobristHash zobrist_piece(Piece p, Square s) {
  return keys().piece[index_of(p.color) * 6 + index_of(p.kind)][s.index()];
}
ZobristHash zobrist_side() { return keys().side; }
ZobristHash zobrist_phase() { return keys().phase; }
ZobristHash zobrist_castling(std::uint8_t rights) { return keys().castling[rights & 15]; }
ZobristHash zobrist_ep(Square s) { return keys().ep[s.index()]; }

ZobristHash zobrist(const WorldState& s) {
  ZobristHash h = 0;
  for (Color c : {Color::kWhite, Color::kBlack}) {
    for (int k = 0; k < kNumPieceKinds; ++k) {
      const Piece p{c, static_cast<PieceKind>(k)};
      for (Bitboard b = s.pieces(c, p.kind); b;) h ^= zobrist_piece(p, pop_lsb(b));
    }
  }
  if (s.side() == Color::kBlack) h ^= zobrist_side();
  if (s.phase() == Phase::kMove) h ^= zobrist_phase();
  h ^= zobrist_castling(s.castling());
  if (s.ep()) h ^= zobrist_ep(*s.ep());
  return h;
}

}  // namespace penumbral
