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

#include <array>
#include <cstdint>
#include <optional>

#include "penumbral/core/types.hpp"

namespace penumbral {

enum class Phase : std::uint8_t { kSense, kMove };

inline constexpr std::uint8_t kCastleWhiteKing = 1;
inline constexpr std::uint8_t kCastleWhiteQueen = 2;
inline constexpr std::uint8_t kCastleBlackKing = 4;
inline constexpr std::uint8_t kCastleBlackQueen = 8;

using ZobristHash = std::uint64_t;

// One color's most recent executed move. Empty from/to means a pass or no move yet.
struct MoveMeta {
  OptSquare from;
  OptSquare to;
  OptSquare capture;  // square this color captured on with that move
  friend bool operator==(const MoveMeta&, const MoveMeta&) = default;
};

class WorldState {
 public:
  static WorldState initial();
  static WorldState empty();

  Bitboard pieces(Color c, PieceKind k) const { return kinds_[index_of(k)] & colors_[index_of(c)]; }
  Bitboard pieces(PieceKind k) const { return kinds_[index_of(k)]; }
  Bitboard pieces(Color c) const { return colors_[index_of(c)]; }
  Bitboard occupied() const { return colors_[0] | colors_[1]; }
  std::optional<Piece> piece_at(Square s) const;

  // Does not touch the hash; callers rebuild it with rehash().
  void put(Square s, Piece p);
  void remove(Square s);

  Color side() const { return side_; }
  Phase phase() const { return phase_; }
  std::uint8_t castling() const { return castling_; }
  OptSquare ep() const { return ep_; }
  int halfturn() const { return halfturn_; }
  ZobristHash hash() const { return hash_; }

  void set_side(Color c) { side_ = c; }
  void set_phase(Phase p) { phase_ = p; }
  void set_castling(std::uint8_t rights) { castling_ = rights; }
  void set_ep(OptSquare s) { ep_ = s; }
  void set_halfturn(int n) { halfturn_ = n; }
  // Recomputes the hash from scratch.
  void rehash();
  void set_hash(ZobristHash h) { hash_ = h; }

  const MoveMeta& last(Color c) const { return last_[index_of(c)]; }
  const MoveMeta& prev(Color c) const { return prev_[index_of(c)]; }
  MoveMeta& last(Color c) { return last_[index_of(c)]; }
  MoveMeta& prev(Color c) { return prev_[index_of(c)]; }

  // Terminal once either king has been captured.
  bool is_terminal() const { return popcount(kinds_[index_of(PieceKind::kKing)]) < 2; }
  std::optional<Color> winner() const;

  // Equality over placement, side, phase, castling and en passant. Move
  // metadata and the turn counter are ignored.
  friend bool operator==(const WorldState& a, const WorldState& b) {
    return a.hash_ == b.hash_ && a.kinds_ == b.kinds_ && a.colors_ == b.colors_ &&
           a.side_ == b.side_ && a.phase_ == b.phase_ && a.castling_ == b.castling_ &&
           a.ep_ == b.ep_;
  }
  bool same_metadata(const WorldState& other) const {
    return last_ == other.last_ && prev_ == other.prev_ && halfturn_ == other.halfturn_;
  }

 private:
  std::array<Bitboard, kNumPieceKinds> kinds_{};
  std::array<Bitboard, 2> colors_{};
  ZobristHash hash_ = 0;
  std::array<MoveMeta, 2> last_{};
  std::array<MoveMeta, 2> prev_{};
  std::int16_t halfturn_ = 0;
  Color side_ = Color::kWhite;
  Phase phase_ = Phase::kSense;
  std::uint8_t castling_ = 0;
  OptSquare ep_;
};

struct WorldStateHash {
  std::size_t operator()(const WorldState& s) const { return static_cast<std::size_t>(s.hash()); }
};

}  // namespace penumbral
