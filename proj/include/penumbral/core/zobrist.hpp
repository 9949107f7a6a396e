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

#include "penumbral/core/state.hpp"

namespace penumbral {

ZobristHash zobrist_piece(Piece p, Square s);
ZobristHash zobrist_side();  // xored in when Black is to act
ZobristHash zobrist_phase();  // xored in during the move phase
ZobristHash zobrist_castling(std::uint8_t rights);
ZobristHash zobrist_ep(Square s);

// Full recomputation.
ZobristHash zobrist(const WorldState& s);

// A delta is the xor of every key that changed between two states.
constexpr ZobristHash zobrist_update(ZobristHash h, ZobristHash delta) { return h ^ delta; }

// 64-bit finalizer from splitmix64.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace penumbral
