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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mailbox_oracle.hpp"
#include "penumbral/core/attacks.hpp"
#include "penumbral/core/notation.hpp"
#include "penumbral/core/rules.hpp"
#include "penumbral/core/zobrist.hpp"
#include "test_util.hpp"

namespace penumbral {
namespace {

using testing::random_states;
using testing::state_from;

constexpr const char* kInitialMove =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR/w m KQkq - - - - -";

Action mv(const char* text) { return *parse_action(std::string("move:") + text); }

std::vector<std::string> sorted_text(const std::vector<Action>& actions) {
  std::vector<std::string> out;
  for (const auto& a : actions) out.push_back(to_string(a));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(LegalActions, InitialPositionHas20MovesAndPass) {
  const auto actions = legal_actions(state_from(kInitialMove));
  EXPECT_EQ(actions.size(), 21u);
  EXPECT_EQ(sorted_text(actions), oracle::mailbox_moves(state_from(kInitialMove)));
}

TEST(LegalActions, SensePhaseListsEverySquare) {
  const auto actions = legal_actions(WorldState::initial());
  ASSERT_EQ(actions.size(), 64u);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(actions[i], Action::sense(Square(i)));
}

TEST(LegalActions, TerminalStateHasNone) {
  const auto s = state_from("8/8/8/8/8/8/8/4K3/b m - - - - - -");
  EXPECT_TRUE(s.is_terminal());
  EXPECT_EQ(s.winner(), Color::kWhite);
  EXPECT_TRUE(legal_actions(s).empty());
}

TEST(LegalActions, MatchesMailboxOracleOnRandomPositions) {
  int checked = 0;
  for (const auto& s : random_states(20000, 7)) {
    if (s.phase() != Phase::kMove || s.is_terminal()) continue;
    ASSERT_EQ(sorted_text(legal_actions(s)), oracle::mailbox_moves(s)) << to_text(s);
    ++checked;
  }
  EXPECT_GT(checked, 5000);
}

TEST(RequestableActions, InitialPositionIncludesEmptyDiagonals) {
  // 20 moves, 14 diagonal pawn steps onto empty squares, and Pass.
  EXPECT_EQ(requestable_actions(state_from(kInitialMove)).size(), 35u);
}

TEST(RequestableActions, IgnoresOpposingPieces) {
  for (const auto& s : random_states(5000, 11)) {
    if (s.phase() != Phase::kMove || s.is_terminal()) continue;
    WorldState stripped = s;
    for (Bitboard b = s.pieces(~s.side()) & ~s.pieces(PieceKind::kKing); b;) {
      stripped.remove(pop_lsb(b));
    }
    stripped.rehash();
    ASSERT_EQ(requestable_actions(s), requestable_actions(stripped)) << to_text(s);
  }
}

TEST(RequestableActions, EveryRequestSubstitutesToAnExecutableAction) {
  for (const auto& s : random_states(5000, 12)) {
    if (s.phase() != Phase::kMove || s.is_terminal()) continue;
    const auto legal = legal_actions(s);
    for (const auto& a : requestable_actions(s)) {
      const Action executed = substitute_move(s, a);
      ASSERT_NE(std::find(legal.begin(), legal.end(), executed), legal.end())
          << to_text(s) << " " << to_string(a);
    }
  }
}

TEST(SubstituteMove, RookStopsOnTheQueenItRunsInto) {
  const auto s = state_from("4k1Qr/8/8/8/8/8/8/4K3/b m k - - - - -");
  EXPECT_EQ(substitute_move(s, mv("h8f8")), mv("h8g8"));
  const auto step = apply_action(s, mv("h8f8"));
  EXPECT_EQ(step.actor.executed, mv("h8g8"));
  EXPECT_EQ(step.actor.capture, Square::parse("g8"));
  EXPECT_EQ(step.other.capture, Square::parse("g8"));
}

TEST(SubstituteMove, LegalMoveIsUnchanged) {
  const auto s = state_from(kInitialMove);
  for (const auto& a : legal_actions(s)) EXPECT_EQ(substitute_move(s, a), a);
}

TEST(SubstituteMove, PawnPushBlockedOnFirstSquareBecomesPass) {
  const auto s = state_from("4k3/8/8/8/8/4n3/4P3/4K3/w m - - - - - -");
  EXPECT_EQ(substitute_move(s, mv("e2e4")), Action::pass());
}

TEST(SubstituteMove, PawnDoublePushBlockedOnSecondSquareStopsShort) {
  const auto s = state_from("4k3/8/8/8/4n3/8/4P3/4K3/w m - - - - - -");
  EXPECT_EQ(substitute_move(s, mv("e2e4")), mv("e2e3"));
}

TEST(SubstituteMove, PawnDiagonalWithoutVictimBecomesPass) {
  const auto s = state_from("4k3/8/8/8/8/8/4P3/4K3/w m - - - - - -");
  EXPECT_EQ(substitute_move(s, mv("e2d3")), Action::pass());
  const auto t = state_from("4k3/8/8/8/8/3p4/4P3/4K3/w m - - - - - -");
  EXPECT_EQ(substitute_move(t, mv("e2d3")), mv("e2d3"));
}

TEST(SubstituteMove, BlockedCastleBecomesPass) {
  const auto s = state_from("4k3/8/8/8/8/8/8/4K1nR/w m K - - - - -");
  EXPECT_EQ(substitute_move(s, mv("e1g1")), Action::pass());
  const auto open = state_from("4k3/8/8/8/8/8/8/4K2R/w m K - - - - -");
  EXPECT_EQ(substitute_move(open, mv("e1g1")), mv("e1g1"));
}

TEST(SubstituteMove, MissingPromotionBecomesQueen) {
  const auto s = state_from("k7/4P3/8/8/8/8/8/4K3/w m - - - - - -");
  EXPECT_EQ(substitute_move(s, mv("e7e8")), mv("e7e8q"));
  EXPECT_EQ(substitute_move(s, mv("e7e8n")), mv("e7e8n"));
  const auto blocked = state_from("k3r3/4P3/8/8/8/8/8/4K3/w m - - - - - -");
  EXPECT_EQ(substitute_move(blocked, mv("e7e8q")), Action::pass());
}

TEST(SubstituteMove, IsIdempotent) {
  std::mt19937_64 rng(3);
  for (const auto& s : random_states(5000, 13)) {
    if (s.phase() != Phase::kMove || s.is_terminal()) continue;
    const Action a = testing::random_action(s, rng);
    const Action once = substitute_move(s, a);
    ASSERT_EQ(substitute_move(s, once), once) << to_text(s) << " " << to_string(a);
  }
}

TEST(ApplyAction, SenseRevealsWindowToSenserOnly) {
  const auto s = WorldState::initial();
  const auto step = apply_action(s, Action::sense(*Square::parse("d2")));
  EXPECT_EQ(step.state, [&] {
    WorldState t = s;
    t.set_phase(Phase::kMove);
    t.rehash();
    return t;
  }());
  ASSERT_TRUE(step.actor.sense);
  const auto squares = step.actor.sense->squares();
  ASSERT_EQ(squares.size(), 9u);
  EXPECT_EQ(squares.front().first, *Square::parse("c1"));
  EXPECT_EQ(squares.front().second, (Piece{Color::kWhite, PieceKind::kBishop}));
  EXPECT_EQ(squares.back().first, *Square::parse("e3"));
  EXPECT_FALSE(squares.back().second);
  EXPECT_EQ(step.other, Observation{});
}

TEST(ApplyAction, CornerSenseIsClipped) {
  const auto step = apply_action(WorldState::initial(), Action::sense(*Square::parse("a1")));
  EXPECT_EQ(step.actor.sense->squares().size(), 4u);
}

TEST(ApplyAction, PassKeepsPlacement) {
  const auto s = state_from(kInitialMove);
  const auto next = apply_action(s, Action::pass()).state;
  EXPECT_EQ(next.occupied(), s.occupied());
  EXPECT_EQ(next.side(), Color::kBlack);
  EXPECT_EQ(next.phase(), Phase::kSense);
}

TEST(ApplyAction, KingCaptureEndsTheGame) {
  const auto s = state_from("4k3/8/8/8/8/8/8/4KQ2/w m - - - - - -");
  const auto next = apply_action(s, mv("f1f8")).state;
  EXPECT_FALSE(next.is_terminal());
  const auto t = state_from("4k3/8/8/8/8/8/8/4Q1K1/w m - - - - - -");
  const auto won = apply_action(t, mv("e1e8"));
  EXPECT_TRUE(won.state.is_terminal());
  EXPECT_EQ(won.state.winner(), Color::kWhite);
  EXPECT_EQ(won.actor.capture, Square::parse("e8"));
}

TEST(ApplyAction, RejectsActionsOutOfPhase) {
  EXPECT_THROW(apply_action(WorldState::initial(), Action::pass()), std::logic_error);
  EXPECT_THROW(apply_action(state_from(kInitialMove), Action::sense(Square(0))),
               std::logic_error);
}

TEST(ApplyAction, EnPassantReportsThePawnSquare) {
  const auto s = state_from("4k3/3p4/8/4P3/8/8/8/4K3/b m - - - - - -");
  const auto pushed = apply_action(s, mv("d7d5")).state;
  EXPECT_EQ(pushed.ep(), Square::parse("d6"));
  auto white = apply_action(pushed, Action::sense(Square(0))).state;
  const auto step = apply_action(white, mv("e5d6"));
  EXPECT_EQ(step.actor.capture, Square::parse("d5"));
  EXPECT_FALSE(step.state.piece_at(*Square::parse("d5")));
  // The skipped square is recorded even with nothing able to capture, so
  // the same placement reached by a single push stays a distinct state.
  const auto quiet = state_from("4k3/3p4/8/8/8/8/8/4K3/b m - - - - - -");
  const auto doubled = apply_action(quiet, mv("d7d5")).state;
  EXPECT_EQ(doubled.ep(), Square::parse("d6"));
  auto stepped = apply_action(state_from("4k3/8/3p4/8/8/8/8/4K3/b m - - - - - -"), mv("d6d5")).state;
  EXPECT_NE(doubled, stepped);
}

TEST(ApplyAction, CastlingMovesTheRookAndClearsRights) {
  const auto s = state_from("r3k2r/8/8/8/8/8/8/R3K2R/w m KQkq - - - - -");
  const auto next = apply_action(s, mv("e1c1")).state;
  EXPECT_EQ(next.piece_at(*Square::parse("d1")), (Piece{Color::kWhite, PieceKind::kRook}));
  EXPECT_EQ(next.castling(), kCastleBlackKing | kCastleBlackQueen);
  auto black = apply_action(next, Action::sense(Square(0))).state;
  const auto after = apply_action(black, mv("h8h1")).state;
  EXPECT_EQ(after.castling(), kCastleBlackQueen);
}

TEST(ApplyAction, CaptureRemovesExactlyOnePiece) {
  std::mt19937_64 rng(5);
  for (const auto& s : random_states(20000, 17)) {
    if (s.is_terminal()) continue;
    const Action a = testing::random_action(s, rng);
    const auto step = apply_action(s, a);
    const int before = popcount(s.occupied());
    const int after = popcount(step.state.occupied());
    ASSERT_EQ(after, step.actor.capture ? before - 1 : before) << to_text(s) << to_string(a);
    if (step.actor.capture) {
      ASSERT_EQ(popcount(step.state.pieces(s.side())), popcount(s.pieces(s.side())));
    }
  }
}

TEST(Zobrist, CopyHashesEqual) {
  const auto s = WorldState::initial();
  const WorldState copy = s;
  EXPECT_EQ(zobrist(s), zobrist(copy));
}

TEST(Zobrist, IncrementalMatchesRecomputed) {
  std::mt19937_64 rng(19);
  WorldState s = WorldState::initial();
  for (int i = 0; i < 100000; ++i) {
    if (s.is_terminal() || s.halfturn() > 300) s = WorldState::initial();
    s = apply_action(s, testing::random_action(s, rng)).state;
    ASSERT_EQ(s.hash(), zobrist(s)) << to_text(s);
  }
}

TEST(Zobrist, SinglePlacementChangeChangesHash) {
  std::mt19937_64 rng(23);
  int trials = 0;
  for (const auto& s : random_states(20000, 29)) {
    const Bitboard occupied = s.occupied();
    const Bitboard empty = ~occupied;
    if (!empty) continue;
    WorldState t = s;
    Bitboard movable = occupied & ~s.pieces(PieceKind::kKing);
    if (!movable) continue;
    const int pick = std::uniform_int_distribution<int>(0, popcount(movable) - 1)(rng);
    for (int i = 0; i < pick; ++i) pop_lsb(movable);
    const Square from = lsb_square(movable);
    const Piece p = *s.piece_at(from);
    t.remove(from);
    Bitboard targets = empty;
    const int to_pick = std::uniform_int_distribution<int>(0, popcount(targets) - 1)(rng);
    for (int i = 0; i < to_pick; ++i) pop_lsb(targets);
    t.put(lsb_square(targets), p);
    t.rehash();
    ASSERT_NE(t.hash(), s.hash());
    ++trials;
  }
  EXPECT_GT(trials, 10000);
}

TEST(ObservationMatches, CaptureExamples) {
  const auto s = state_from("4k3/8/8/4p3/3P4/8/8/4K3/w m - - - - - -");
  Observation capture_e5;
  capture_e5.executed = mv("d4e5");
  capture_e5.capture = Square::parse("e5");
  EXPECT_TRUE(observation_matches(s, mv("d4e5"), capture_e5, Role::kActor));
  Observation other;
  other.capture = Square::parse("e5");
  EXPECT_TRUE(observation_matches(s, mv("d4e5"), other, Role::kOther));
  EXPECT_FALSE(observation_matches(s, mv("d4e5"), Observation{}, Role::kOther));
}

TEST(ObservationMatches, SenseGridDifferingInOneSquareFails) {
  const auto a = WorldState::initial();
  WorldState b = a;
  b.remove(*Square::parse("d2"));
  b.put(*Square::parse("d3"), {Color::kWhite, PieceKind::kPawn});
  b.rehash();
  const auto obs = apply_action(a, Action::sense(*Square::parse("e2"))).actor;
  EXPECT_TRUE(observation_matches(a, Action::sense(*Square::parse("e2")), obs, Role::kActor));
  EXPECT_FALSE(observation_matches(b, Action::sense(*Square::parse("e2")), obs, Role::kActor));
}

TEST(ObservationMatches, ProducedObservationsAlwaysMatch) {
  std::mt19937_64 rng(31);
  for (const auto& s : random_states(20000, 37)) {
    if (s.is_terminal()) continue;
    const Action a = testing::random_action(s, rng);
    const auto step = apply_action(s, a);
    ASSERT_TRUE(observation_matches(s, a, step.actor, Role::kActor));
    ASSERT_TRUE(observation_matches(s, a, step.other, Role::kOther));
  }
}

TEST(Notation, StateRoundTrip) {
  for (const auto& s : random_states(5000, 41)) {
    const std::string text = to_text(s);
    const auto parsed = parse_state(text);
    ASSERT_TRUE(parsed) << text;
    EXPECT_EQ(*parsed, s) << text;
    EXPECT_TRUE(parsed->same_metadata(s)) << text;
    EXPECT_EQ(to_text(*parsed), text);
  }
}

TEST(Notation, AcceptsSpaceBeforeSide) {
  const auto a = parse_state("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w s KQkq - - - - -");
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, WorldState::initial());
}

TEST(Notation, RejectsMalformedText) {
  EXPECT_FALSE(parse_state(""));
  EXPECT_FALSE(parse_state("8/8/8/8/8/8/8/8/w s - - - - - -x"));
  EXPECT_FALSE(parse_state("9/8/8/8/8/8/8/8/w s - - - - - -"));
  EXPECT_FALSE(parse_state("8/8/8/8/8/8/8/8/w x - - - - - -"));
}

TEST(Notation, ActionRoundTrip) {
  for (const char* text : {"sense:e4", "move:e2e4", "move:e7e8q", "move:a2a1n", "pass"}) {
    const auto a = parse_action(text);
    ASSERT_TRUE(a) << text;
    EXPECT_EQ(to_string(*a), text);
  }
  EXPECT_FALSE(parse_action("move:e2"));
  EXPECT_FALSE(parse_action("move:e7e8k"));
  EXPECT_FALSE(parse_action("sense:z9"));
}

TEST(Attacks, SenseWindowSizes) {
  EXPECT_EQ(popcount(attacks::sense_window(*Square::parse("a1"))), 4);
  EXPECT_EQ(popcount(attacks::sense_window(*Square::parse("a4"))), 6);
  EXPECT_EQ(popcount(attacks::sense_window(*Square::parse("d4"))), 9);
}

}  // namespace
}  // namespace penumbral
