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

#include "penumbral/core/notation.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "penumbral/core/action.hpp"

namespace penumbral {
namespace {

std::string square_or_dash(OptSquare s) { return s ? s->name() : "-"; }

bool parse_square_field(std::string_view text, OptSquare* out) {
  if (text == "-") {
    out->reset();
    return true;
  }
  *out = Square::parse(text);
  return out->has_value();
}

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) parts.push_back(text.substr(i, j - i));
    i = j;
  }
  return parts;
}

bool parse_board(std::string_view board, WorldState* s) {
  int rank = 7;
  int file = 0;
  for (char c : board) {
    if (c == '/') {
      if (file != 8) return false;
      --rank;
      file = 0;
    } else if (c >= '1' && c <= '8') {
      file += c - '0';
    } else {
      const auto piece = piece_from_char(c);
      if (!piece || file > 7 || rank < 0) return false;
      s->put(Square(file, rank), *piece);
      ++file;
    }
    if (file > 8) return false;
  }
  return rank == 0 && file == 8;
}

}  // namespace

std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::kPass: return "pass";
    case ActionKind::kSense: return "sense:" + a.from.name();
    case ActionKind::kMove: {
      std::string text = "move:" + a.from.name() + a.to.name();
      if (a.promotion) text += piece_char({Color::kBlack, *a.promotion});
      return text;
    }
  }
  return "pass";
}

std::optional<Action> parse_action(std::string_view text) {
  if (text == "pass") return Action::pass();
  if (text.starts_with("sense:")) {
    const auto s = Square::parse(text.substr(6));
    if (!s) return std::nullopt;
    return Action::sense(*s);
  }
  if (text.starts_with("move:")) {
    const std::string_view body = text.substr(5);
    if (body.size() != 4 && body.size() != 5) return std::nullopt;
    const auto from = Square::parse(body.substr(0, 2));
    const auto to = Square::parse(body.substr(2, 2));
    if (!from || !to) return std::nullopt;
    std::optional<PieceKind> promo;
    if (body.size() == 5) {
      const auto p = piece_from_char(body[4]);
      if (!p || p->color != Color::kBlack || p->kind == PieceKind::kPawn ||
          p->kind == PieceKind::kKing) {
        return std::nullopt;
      }
      promo = p->kind;
    }
    return Action::move(*from, *to, promo);
  }
  return std::nullopt;
}

std::optional<Piece> SenseResult::at(Square s) const {
  const Bitboard bit = s.bb();
  if (!((colors[0] | colors[1]) & bit)) return std::nullopt;
  const Color c = (colors[0] & bit) ? Color::kWhite : Color::kBlack;
  for (int k = 0; k < kNumPieceKinds; ++k) {
    if (kinds[k] & bit) return Piece{c, static_cast<PieceKind>(k)};
  }
  return std::nullopt;
}

std::vector<std::pair<Square, std::optional<Piece>>> SenseResult::squares() const {
  std::vector<std::pair<Square, std::optional<Piece>>> out;
  for (Bitboard b = window; b;) {
    const Square s = pop_lsb(b);
    out.emplace_back(s, at(s));
  }
  return out;
}

std::string board_fen(const WorldState& s) {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      const auto p = s.piece_at(Square(file, rank));
      if (!p) {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      out += piece_char(*p);
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (rank) out += '/';
  }
  return out;
}

std::string to_text(const WorldState& s) {
  const Color us = s.side();
  std::ostringstream out;
  out << board_fen(s) << '/' << color_char(us) << ' '
      << (s.phase() == Phase::kSense ? 's' : 'm') << ' ';
  std::string castling;
  if (s.castling() & kCastleWhiteKing) castling += 'K';
  if (s.castling() & kCastleWhiteQueen) castling += 'Q';
  if (s.castling() & kCastleBlackKing) castling += 'k';
  if (s.castling() & kCastleBlackQueen) castling += 'q';
  out << (castling.empty() ? "-" : castling) << ' ' << square_or_dash(s.ep()) << ' '
      << square_or_dash(s.last(us).from) << ' ' << square_or_dash(s.last(us).to) << ' '
      << square_or_dash(s.last(us).capture) << ' ' << square_or_dash(s.last(~us).capture);

  auto extra = [&out](const char* key, OptSquare v) {
    if (v) out << ' ' << key << '=' << v->name();
  };
  extra("ofrom", s.last(~us).from);
  extra("oto", s.last(~us).to);
  extra("pfrom", s.prev(us).from);
  extra("pto", s.prev(us).to);
  extra("pcap", s.prev(us).capture);
  extra("opfrom", s.prev(~us).from);
  extra("opto", s.prev(~us).to);
  extra("opcap", s.prev(~us).capture);
  if (s.halfturn()) out << " ht=" << s.halfturn();
  return out.str();
}

std::optional<WorldState> parse_state(std::string_view text) {
  auto parts = split(text);
  if (parts.empty()) return std::nullopt;
  // The side letter may be attached to the board with '/' or stand alone.
  std::string_view board = parts[0];
  std::string_view side;
  std::size_t next = 1;
  if (board.size() >= 2 && board[board.size() - 2] == '/' &&
      (board.back() == 'w' || board.back() == 'b')) {
    side = board.substr(board.size() - 1);
    board = board.substr(0, board.size() - 2);
  } else if (parts.size() > 1) {
    side = parts[1];
    next = 2;
  }
  if (parts.size() < next + 7) return std::nullopt;

  WorldState s = WorldState::empty();
  if (!parse_board(board, &s)) return std::nullopt;
  if (side != "w" && side != "b") return std::nullopt;
  const Color us = side == "w" ? Color::kWhite : Color::kBlack;
  s.set_side(us);

  const std::string_view phase = parts[next];
  if (phase != "s" && phase != "m") return std::nullopt;
  s.set_phase(phase == "s" ? Phase::kSense : Phase::kMove);

  std::uint8_t rights = 0;
  if (parts[next + 1] != "-") {
    for (char c : parts[next + 1]) {
      switch (c) {
        case 'K': rights |= kCastleWhiteKing; break;
        case 'Q': rights |= kCastleWhiteQueen; break;
        case 'k': rights |= kCastleBlackKing; break;
        case 'q': rights |= kCastleBlackQueen; break;
        default: return std::nullopt;
      }
    }
  }
  s.set_castling(rights);

  OptSquare ep;
  if (!parse_square_field(parts[next + 2], &ep)) return std::nullopt;
  s.set_ep(ep);
  if (!parse_square_field(parts[next + 3], &s.last(us).from) ||
      !parse_square_field(parts[next + 4], &s.last(us).to) ||
      !parse_square_field(parts[next + 5], &s.last(us).capture) ||
      !parse_square_field(parts[next + 6], &s.last(~us).capture)) {
    return std::nullopt;
  }

  for (std::size_t i = next + 7; i < parts.size(); ++i) {
    const std::string_view token = parts[i];
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "ht") {
      int n = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size() || n < 0) return std::nullopt;
      s.set_halfturn(n);
      continue;
    }
    OptSquare* field = nullptr;
    if (key == "ofrom") field = &s.last(~us).from;
    if (key == "oto") field = &s.last(~us).to;
    if (key == "pfrom") field = &s.prev(us).from;
    if (key == "pto") field = &s.prev(us).to;
    if (key == "pcap") field = &s.prev(us).capture;
    if (key == "opfrom") field = &s.prev(~us).from;
    if (key == "opto") field = &s.prev(~us).to;
    if (key == "opcap") field = &s.prev(~us).capture;
    if (!field || !parse_square_field(value, field)) return std::nullopt;
  }
  s.rehash();
  return s;
}

}  // namespace penumbral
