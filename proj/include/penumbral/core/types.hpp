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

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace penumbral {

using Bitboard = std::uint64_t;

enum class Color : std::uint8_t { kWhite = 0, kBlack = 1 };

constexpr Color operator~(Color c) {
  return c == Color::kWhite ? Color::kBlack : Color::kWhite;
}
constexpr int index_of(Color c) { return static_cast<int>(c); }
char color_char(Color c);

enum class PieceKind : std::uint8_t {
  kPawn = 0,
  kKnight = 1,
  kBishop = 2,
  kRook = 3,
  kQueen = 4,
  kKing = 5,
};
inline constexpr int kNumPieceKinds = 6;

constexpr int index_of(PieceKind k) { return static_cast<int>(k); }

struct Piece {
  Color color;
  PieceKind kind;
  friend constexpr bool operator==(Piece, Piece) = default;
};

// FEN letter: uppercase for white.
char piece_char(Piece p);
std::optional<Piece> piece_from_char(char c);

// a1 = 0, b1 = 1, ..., h8 = 63.
class Square {
 public:
  constexpr Square() = default;
  constexpr explicit Square(int index) : index_(static_cast<std::uint8_t>(index)) {}
  constexpr Square(int file, int rank) : index_(static_cast<std::uint8_t>(rank * 8 + file)) {}

  constexpr int index() const { return index_; }
  constexpr int file() const { return index_ & 7; }
  constexpr int rank() const { return index_ >> 3; }
  constexpr Bitboard bb() const { return Bitboard{1} << index_; }
  // Vertical mirror; maps a square to the same square seen from Black's side.
  constexpr Square flipped() const { return Square(index_ ^ 56); }

  std::string name() const;
  static std::optional<Square> parse(std::string_view text);

  friend constexpr bool operator==(Square, Square) = default;
  friend constexpr auto operator<=>(Square, Square) = default;

 private:
  std::uint8_t index_ = 0;
};

using OptSquare = std::optional<Square>;

constexpr Square lsb_square(Bitboard b) { return Square(std::countr_zero(b)); }
constexpr Square msb_square(Bitboard b) { return Square(63 - std::countl_zero(b)); }
constexpr Square pop_lsb(Bitboard& b) {
  Square s = lsb_square(b);
  b &= b - 1;
  return s;
}
constexpr int popcount(Bitboard b) { return std::popcount(b); }

// Mirrors a bitboard vertically (rank r -> rank 7 - r).
constexpr Bitboard flip_vertical(Bitboard b) { return __builtin_bswap64(b); }

inline constexpr Bitboard kFileA = 0x0101010101010101ULL;
inline constexpr Bitboard kFileH = kFileA << 7;
inline constexpr Bitboard kRank1 = 0xFFULL;
inline constexpr Bitboard kRank8 = kRank1 << 56;
inline constexpr Bitboard kDarkSquares = 0xAA55AA55AA55AA55ULL;
inline constexpr Bitboard kLightSquares = ~kDarkSquares;

constexpr Bitboard file_mask(int file) { return kFileA << file; }
constexpr Bitboard rank_mask(int rank) { return kRank1 << (8 * rank); }

}  // namespace penumbral
