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

#include "penumbral/core/types.hpp"

namespace penumbral {

char color_char(Color c) { return c == Color::kWhite ? 'w' : 'b'; }

char piece_char(Piece p) {
  static constexpr char kLetters[] = "pnbrqk";
  const char lower = kLetters[index_of(p.kind)];
  return p.color == Color::kWhite ? static_cast<char>(lower - 'a' + 'A') : lower;
}

std::optional<Piece> piece_from_char(char c) {
  const Color color = (c >= 'A' && c <= 'Z') ? Color::kWhite : Color::kBlack;
  const char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  switch (lower) {
    case 'p': return Piece{color, PieceKind::kPawn};
    case 'n': return Piece{color, PieceKind::kKnight};
    case 'b': return Piece{color, PieceKind::kBishop};
    case 'r': return Piece{color, PieceKind::kRook};
    case 'q': return Piece{color, PieceKind::kQueen};
    case 'k': return Piece{color, PieceKind::kKing};
    default: return std::nullopt;
  }
}

std::string Square::name() const {
  return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
}

std::optional<Square> Square::parse(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  const int f = text[0] - 'a';
  const int r = text[1] - '1';
  if (f < 0 || f > 7 || r < 0 || r > 7) return std::nullopt;
  return Square(f, r);
}

}  // namespace penumbral
