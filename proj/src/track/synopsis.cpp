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

#include "penumbral/track/synopsis.hpp"

#include <cassert>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

#include "penumbral/core/attacks.hpp"
#include "penumbral/simd/kernels.hpp"

namespace penumbral {
namespace {

constexpr Bitboard kAll = ~Bitboard{0};

// Counts how many times each square is covered by a stream of bitboards.
struct Coverage {
  Bitboard once = 0;
  Bitboard twice = 0;
  void add(Bitboard b) {
    twice |= once & b;
    once |= b;
  }
};

struct AttackMaps {
  Coverage all;
  Bitboard pawns = 0;
  Bitboard knights = 0;
  Bitboard diagonal = 0;    // bishops and queens along diagonals
  Bitboard orthogonal = 0;  // rooks and queens along ranks and files
  Bitboard king = 0;
  Bitboard without_king = 0;
  Bitboard without_pawns = 0;
};

AttackMaps attack_maps(const WorldState& x, Color c) {
  AttackMaps m;
  const Bitboard occupied = x.occupied();
  for (Bitboard b = x.pieces(c, PieceKind::kPawn); b;) {
    const Bitboard a = attacks::pawn(c, pop_lsb(b));
    m.all.add(a);
    m.pawns |= a;
  }
  for (Bitboard b = x.pieces(c, PieceKind::kKnight); b;) {
    const Bitboard a = attacks::knight(pop_lsb(b));
    m.all.add(a);
    m.knights |= a;
  }
  for (Bitboard b = x.pieces(c, PieceKind::kBishop); b;) {
    const Bitboard a = attacks::bishop(pop_lsb(b), occupied);
    m.all.add(a);
    m.diagonal |= a;
  }
  for (Bitboard b = x.pieces(c, PieceKind::kRook); b;) {
    const Bitboard a = attacks::rook(pop_lsb(b), occupied);
    m.all.add(a);
    m.orthogonal |= a;
  }
  for (Bitboard b = x.pieces(c, PieceKind::kQueen); b;) {
    const Square s = pop_lsb(b);
    const Bitboard d = attacks::bishop(s, occupied);
    const Bitboard o = attacks::rook(s, occupied);
    m.all.add(d | o);
    m.diagonal |= d;
    m.orthogonal |= o;
  }
  for (Bitboard b = x.pieces(c, PieceKind::kKing); b;) {
    m.king |= attacks::king(pop_lsb(b));
  }
  m.without_king = m.all.once;
  m.all.add(m.king);
  m.without_pawns = m.knights | m.diagonal | m.orthogonal | m.king;
  return m;
}

Bitboard castle_targets(const WorldState& x, Color c, Bitboard occupied) {
  const int r = c == Color::kWhite ? 0 : 7;
  const Square king(4, r);
  if (!(x.pieces(c, PieceKind::kKing) & king.bb())) return 0;
  const std::uint8_t k_right = c == Color::kWhite ? kCastleWhiteKing : kCastleBlackKing;
  const std::uint8_t q_right = c == Color::kWhite ? kCastleWhiteQueen : kCastleBlackQueen;
  Bitboard out = 0;
  if ((x.castling() & k_right) && !(attacks::between(king, Square(7, r)) & occupied)) {
    out |= Square(6, r).bb();
  }
  if ((x.castling() & q_right) && !(attacks::between(king, Square(0, r)) & occupied)) {
    out |= Square(2, r).bb();
  }
  return out;
}

// Where c's pieces could move in x if c were to move, counted per piece.
Coverage move_targets(const WorldState& x, Color c) {
  Coverage cov;
  const Bitboard own = x.pieces(c);
  const Bitboard opp = x.pieces(~c);
  const Bitboard occupied = own | opp;
  const int step = c == Color::kWhite ? 8 : -8;
  const int start = c == Color::kWhite ? 1 : 6;
  Bitboard victims = opp;
  if (x.ep() && x.side() == c) victims |= x.ep()->bb();
  for (Bitboard b = x.pieces(c, PieceKind::kPawn); b;) {
    const Square from = pop_lsb(b);
    Bitboard d = attacks::pawn(c, from) & victims;
    const Square one(from.index() + step);
    if (!(occupied & one.bb())) {
      d |= one.bb();
      if (from.rank() == start) {
        const Square two(one.index() + step);
        if (!(occupied & two.bb())) d |= two.bb();
      }
    }
    cov.add(d);
  }
  for (PieceKind k : {PieceKind::kKnight, PieceKind::kBishop, PieceKind::kRook,
                      PieceKind::kQueen, PieceKind::kKing}) {
    for (Bitboard b = x.pieces(c, k); b;) {
      Bitboard d = attacks::piece(k, c, pop_lsb(b), occupied) & ~own;
      if (k == PieceKind::kKing) d |= castle_targets(x, c, occupied);
      cov.add(d);
    }
  }
  return cov;
}

Bitboard rook_corners(std::uint8_t rights, Color c) {
  Bitboard out = 0;
  if (c == Color::kWhite) {
    if (rights & kCastleWhiteKing) out |= Square(7, 0).bb();
    if (rights & kCastleWhiteQueen) out |= Square(0, 0).bb();
  } else {
    if (rights & kCastleBlackKing) out |= Square(7, 7).bb();
    if (rights & kCastleBlackQueen) out |= Square(0, 7).bb();
  }
  return out;
}

Bitboard square_bb(OptSquare s) { return s ? s->bb() : 0; }

// Per-member columns that get folded with AND and OR.
enum Column {
  kNotOpp,
  kOppKind0,
  kOwnAttacks = kOppKind0 + kNumPieceKinds,
  kOwnReach,
  kOwnDouble,
  kOwnReachDouble,
  kOwnPawnAtt,
  kOwnKnightAtt,
  kOwnDiagAtt,
  kOwnOrthAtt,
  kOwnNoKing,
  kOwnNoPawns,
  kOppAttacks,
  kOppDouble,
  kOppPawnAtt,
  kOppKnightAtt,
  kOppDiagAtt,
  kOppOrthAtt,
  kOppNoKing,
  kOppNoPawns,
  kSafeOppKing,
  kOppReach,
  kOppCastle,
  kEmpty,
  kOppKnightsNearKing,
  kOppDiagNearKing,
  kOppOrthNearKing,
  kOwnCastleNow,
  kNumColumns,
};

void member_columns(const WorldState& x, Color us, Bitboard king_knight, Bitboard king_diag,
                    Bitboard king_orth, std::uint64_t* col) {
  const Color them = ~us;
  col[kNotOpp] = ~x.pieces(them);
  for (int k = 0; k < kNumPieceKinds; ++k) {
    col[kOppKind0 + k] = x.pieces(them, static_cast<PieceKind>(k));
  }
  const AttackMaps own = attack_maps(x, us);
  const AttackMaps opp = attack_maps(x, them);
  const Coverage own_reach = move_targets(x, us);
  col[kOwnAttacks] = own.all.once;
  col[kOwnReach] = own_reach.once;
  col[kOwnDouble] = own.all.twice;
  col[kOwnReachDouble] = own_reach.twice;
  col[kOwnPawnAtt] = own.pawns;
  col[kOwnKnightAtt] = own.knights;
  col[kOwnDiagAtt] = own.diagonal;
  col[kOwnOrthAtt] = own.orthogonal;
  col[kOwnNoKing] = own.without_king;
  col[kOwnNoPawns] = own.without_pawns;
  col[kOppAttacks] = opp.all.once;
  col[kOppDouble] = opp.all.twice;
  col[kOppPawnAtt] = opp.pawns;
  col[kOppKnightAtt] = opp.knights;
  col[kOppDiagAtt] = opp.diagonal;
  col[kOppOrthAtt] = opp.orthogonal;
  col[kOppNoKing] = opp.without_king;
  col[kOppNoPawns] = opp.without_pawns;
  col[kSafeOppKing] = x.pieces(them, PieceKind::kKing) & ~own.all.once;
  col[kOppReach] = move_targets(x, them).once;
  col[kOppCastle] = rook_corners(x.castling(), them);
  col[kEmpty] = ~x.occupied();
  col[kOppKnightsNearKing] = x.pieces(them, PieceKind::kKnight) & king_knight;
  col[kOppDiagNearKing] =
      (x.pieces(them, PieceKind::kBishop) | x.pieces(them, PieceKind::kQueen)) & king_diag;
  col[kOppOrthNearKing] =
      (x.pieces(them, PieceKind::kRook) | x.pieces(them, PieceKind::kQueen)) & king_orth;
  col[kOwnCastleNow] = castle_targets(x, us, x.occupied());
}

}  // namespace

std::array<Bitboard, 10> constant_planes() {
  Bitboard east = 0;
  for (int f = 4; f < 8; ++f) east |= file_mask(f);
  Bitboard north = 0;
  for (int r = 4; r < 8; ++r) north |= rank_mask(r);
  return {east, ~east, ~north, north, kRank1, kRank8, kFileA, kFileH, kDarkSquares, kLightSquares};
}

Synopsis synopsis(const LimitedStateSet& l, Color perspective) {
  return synopsis(l.states, perspective, l.prev_opp);
}

Synopsis synopsis(std::span<const WorldState> states, Color perspective,
                  const std::optional<OpponentMasks>& prev_opp) {
  assert(!states.empty());
  const Color us = perspective;
  const Color them = ~us;
  const WorldState& x0 = states[0];
  Synopsis out;
  out.perspective = us;
  auto& p = out.planes;

  const Bitboard own = x0.pieces(us);
  const Bitboard own_king = x0.pieces(us, PieceKind::kKing);
  Bitboard king_knight = 0, king_diag = 0, king_orth = 0;
  if (own_king) {
    const Square k = lsb_square(own_king);
    king_knight = attacks::knight(k);
    king_diag = attacks::bishop(k, own);
    king_orth = attacks::rook(k, own);
  }

  thread_local std::vector<std::uint64_t> rows;
  rows.resize(states.size() * kNumColumns);
  for (std::size_t i = 0; i < states.size(); ++i) {
    assert(states[i].pieces(us) == own);
    member_columns(states[i], us, king_knight, king_diag, king_orth, rows.data() + i * kNumColumns);
  }
  std::array<std::uint64_t, kNumColumns> all{}, any{};
  simd::fold_and_or(rows.data(), states.size(), kNumColumns, all.data(), any.data());

  p[10] = x0.phase() == Phase::kSense ? kAll : 0;
  p[11] = ~own;
  for (int k = 0; k < kNumPieceKinds; ++k) {
    p[12 + k] = x0.pieces(us, static_cast<PieceKind>(k));
  }
  p[18] = all[kNotOpp];
  p[25] = any[kNotOpp];
  for (int k = 0; k < kNumPieceKinds; ++k) {
    p[19 + k] = all[kOppKind0 + k];
    p[26 + k] = any[kOppKind0 + k];
  }
  p[32] = square_bb(x0.last(us).from);
  p[33] = square_bb(x0.last(us).to);
  p[34] = square_bb(x0.last(us).capture);
  p[35] = square_bb(x0.last(them).capture);

  p[36] = all[kOwnAttacks];
  p[37] = all[kOwnReach];
  p[38] = any[kOwnAttacks];
  p[39] = all[kOwnDouble];
  p[40] = all[kOwnReachDouble];
  p[41] = any[kOwnDouble];
  p[42] = all[kOwnPawnAtt];
  p[43] = any[kOwnPawnAtt];
  p[44] = all[kOwnKnightAtt];
  p[45] = all[kOwnDiagAtt];
  p[46] = any[kOwnDiagAtt];
  p[47] = all[kOwnOrthAtt];
  p[48] = any[kOwnOrthAtt];
  p[49] = any[kOwnNoKing];
  p[50] = any[kOwnNoPawns];

  p[51] = all[kOppAttacks];
  p[52] = any[kOppAttacks];
  p[53] = all[kOppDouble];
  p[54] = any[kOppDouble];
  p[55] = all[kOppPawnAtt];
  p[56] = any[kOppPawnAtt];
  p[57] = all[kOppKnightAtt];
  p[58] = any[kOppKnightAtt];
  p[59] = all[kOppDiagAtt];
  p[60] = any[kOppDiagAtt];
  p[61] = all[kOppOrthAtt];
  p[62] = any[kOppOrthAtt];
  p[63] = any[kOppNoKing];
  p[64] = any[kOppNoPawns];

  p[65] = any[kSafeOppKing];
  p[66] = any[kOppReach];
  p[67] = any[kOppCastle];
  // A square is known when every occupant class agrees across members.
  Bitboard known = ~(any[kEmpty] ^ all[kEmpty]);
  for (int k = 0; k < kNumPieceKinds; ++k) {
    known &= ~(any[kOppKind0 + k] ^ all[kOppKind0 + k]);
  }
  p[68] = known;

  p[69] = own_king ? attacks::king(lsb_square(own_king)) : 0;
  p[70] = king_knight;
  p[71] = all[kOppKnightsNearKing];
  p[72] = any[kOppKnightsNearKing];
  p[73] = king_diag;
  p[74] = all[kOppDiagNearKing];
  p[75] = any[kOppDiagNearKing];
  p[76] = king_orth;
  p[77] = all[kOppOrthNearKing];
  p[78] = any[kOppOrthNearKing];
  p[79] = own;
  p[80] = all[kEmpty];
  p[81] = rook_corners(x0.castling(), us);
  p[82] = any[kOwnCastleNow];
  p[83] = all[kOwnCastleNow];
  Bitboard queen_orth = 0, queen_diag = 0;
  for (Bitboard b = x0.pieces(us, PieceKind::kQueen); b;) {
    const Square q = pop_lsb(b);
    queen_orth |= attacks::rook(q, own);
    queen_diag |= attacks::bishop(q, own);
  }
  p[84] = queen_orth;
  p[85] = queen_diag;

  if (prev_opp) {
    for (int i = 0; i < 14; ++i) p[86 + i] = (*prev_opp)[i];
  } else {
    for (int i = 0; i < 7; ++i) {
      p[86 + i] = p[18 + i];
      p[93 + i] = p[25 + i];
    }
  }
  p[100] = square_bb(x0.prev(us).from);
  p[101] = square_bb(x0.prev(us).to);
  p[102] = square_bb(x0.prev(us).capture);
  p[103] = square_bb(x0.prev(them).capture);

  if (us == Color::kBlack) {
    for (int i = 10; i < kNumPlanes; ++i) p[i] = flip_vertical(p[i]);
  }
  const auto constants = constant_planes();
  for (int i = 0; i < 10; ++i) p[i] = constants[i];
  return out;
}

std::span<const std::pair<int, int>> and_or_pairs() {
  static const std::vector<std::pair<int, int>> pairs = [] {
    std::vector<std::pair<int, int>> v;
    for (int i = 0; i < 7; ++i) {
      v.emplace_back(18 + i, 25 + i);
      v.emplace_back(86 + i, 93 + i);
    }
    for (auto pr : {std::pair{36, 38}, {39, 41}, {42, 43}, {45, 46}, {47, 48}, {51, 52},
                    {53, 54}, {55, 56}, {57, 58}, {59, 60}, {61, 62}, {71, 72}, {74, 75},
                    {77, 78}, {83, 82}}) {
      v.push_back(pr);
    }
    return v;
  }();
  return pairs;
}

const std::array<const char*, kNumPlanes>& plane_names() {
  static const std::array<const char*, kNumPlanes> names = {
      "East side", "West side", "South side", "North side", "Rank 1", "Rank 8", "A-file",
      "H-file", "Dark squares", "Light squares", "Stage", "Not own piece", "Own pawns",
      "Own knights", "Own bishops", "Own rooks", "Own queens", "Own king",
      "Definitely not opposing pieces", "Definitely opposing pawns",
      "Definitely opposing knights", "Definitely opposing bishops", "Definitely opposing rooks",
      "Definitely opposing queens", "Definitely opposing king", "Possibly not opposing pieces",
      "Possibly opposing pawns", "Possibly opposing knights", "Possibly opposing bishops",
      "Possibly opposing rooks", "Possibly opposing queens", "Possibly opposing kings",
      "Last from", "Last to", "Last own capture", "Last opposing capture",
      "Definitely attackable", "Definitely attackable somehow", "Possibly attackable",
      "Definitely doubly attackable", "Definitely doubly attackable somehow",
      "Possibly doubly attackable", "Definitely attackable by pawns",
      "Possibly attackable by pawns", "Definitely attackable by knights",
      "Definitely attackable by bishops", "Possibly attackable by bishops",
      "Definitely attackable by rooks", "Possibly attackable by rooks",
      "Possibly attackable without king", "Possibly attackable without pawns",
      "Definitely attackable by opponent", "Possibly attackable by opponent",
      "Definitely doubly attackable by opp.", "Possibly doubly attackable by opp.",
      "Definitely attackable by opp. pawns", "Possibly attackable by opp. pawns",
      "Definitely attackable by opp. knights", "Possibly attackable by opp. knights",
      "Definitely attackable by opp. bishops", "Possibly attackable by opp. bishops",
      "Definitely attackable by opp. rooks", "Possibly attackable by opp. rooks",
      "Possibly attackable by opp. w/o king", "Possibly attackable by opp. w/o pawns",
      "Possibly safe opposing king", "Squares the opponent may move to",
      "Possible castle state for opponent", "Known squares", "Own king's king-neighbors",
      "Own king's knight-neighbors", "Definitely opp. knights near king",
      "Possibly opp. knights near king", "Own king's bishop-neighbors",
      "Definitely opp. bishops near king", "Possibly opp. bishops near king",
      "Own king's rook-neighbors", "Definitely opp. rooks near king",
      "Possibly opp. rooks near king", "All own pieces", "Definitely empty squares",
      "May castle eventually", "Possibly may castle", "Definitely may castle",
      "Own queens' rook-neighbors", "Own queens' bishop-neighbors",
      "Previous definitely not opp. pieces", "Previous definitely opp. pawns",
      "Previous definitely opp. knights", "Previous definitely opp. bishops",
      "Previous definitely opp. rooks", "Previous definitely opp. queens",
      "Previous definitely opp. king", "Previous possibly not opp. pieces",
      "Previous possibly opp. pawns", "Previous possibly opp. knights",
      "Previous possibly opp. bishops", "Previous possibly opp. rooks",
      "Previous possibly opp. queens", "Previous possibly opp. king", "Previous last from",
      "Previous last to", "Previous own capture", "Previous opposing capture"};
  return names;
}

void write_synopsis_record(std::ostream& out, const SynopsisRecord& r) {
  char buf[kSynopsisRecordBytes];
  std::memcpy(buf, "PNBS1", 5);
  std::size_t pos = 5;
  for (Bitboard b : r.synopsis.planes) {
    for (int i = 0; i < 8; ++i) buf[pos++] = static_cast<char>((b >> (8 * i)) & 0xFF);
  }
  buf[pos++] = static_cast<char>(index_of(r.synopsis.perspective));
  buf[pos++] = static_cast<char>(r.action & 0xFF);
  buf[pos++] = static_cast<char>(r.action >> 8);
  buf[pos++] = static_cast<char>(r.value);
  out.write(buf, sizeof(buf));
}

std::optional<SynopsisRecord> read_synopsis_record(std::istream& in) {
  unsigned char buf[kSynopsisRecordBytes];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(buf))) return std::nullopt;
  if (std::memcmp(buf, "PNBS1", 5) != 0) return std::nullopt;
  SynopsisRecord r;
  std::size_t pos = 5;
  for (auto& b : r.synopsis.planes) {
    b = 0;
    for (int i = 0; i < 8; ++i) b |= static_cast<Bitboard>(buf[pos++]) << (8 * i);
  }
  if (buf[pos] > 1) return std::nullopt;
  r.synopsis.perspective = buf[pos++] ? Color::kBlack : Color::kWhite;
  r.action = static_cast<std::uint16_t>(buf[pos] | (buf[pos + 1] << 8));
  pos += 2;
  r.value = static_cast<std::int8_t>(buf[pos]);
  return r;
}

}  // namespace penumbral
