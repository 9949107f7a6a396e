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

#include <cmath>
#include <random>
#include <vector>

#include "penumbral/core/notation.hpp"
#include "penumbral/search/analysis.hpp"
#include "penumbral/search/bandit.hpp"
#include "penumbral/search/node_stats.hpp"
#include "bandit_oracle.hpp"
#include "test_util.hpp"

namespace penumbral {
namespace {

using testing::FuzzCase;
using testing::random_case;
using testing::reference_argmax;
using testing::state_from;

ArmStats arm(double n, double q, double m = std::numeric_limits<double>::infinity()) {
  return ArmStats{n, q, m};
}

TEST(Bandit, SingleArm) {
  std::mt19937_64 rng(1);
  const std::vector<float> prior{1.0f};
  const std::vector<ArmStats> arms{arm(5, -3, -1)};
  EXPECT_EQ(bandit(prior, arms, BanditConfig{}, false, rng), 0u);
  EXPECT_EQ(bandit(prior, arms, BanditConfig{}, true, rng), 0u);
}

TEST(Bandit, EmptyThrows) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(bandit({}, {}, BanditConfig{}, false, rng), std::invalid_argument);
  const std::vector<float> prior{0.5f, 0.5f};
  const std::vector<ArmStats> arms{arm(1, 0)};
  EXPECT_THROW(bandit(prior, arms, BanditConfig{}, false, rng), std::invalid_argument);
}

TEST(Bandit, HandEvaluatedUcb1) {
  const std::vector<float> prior{0.5f, 0.5f};
  const std::vector<ArmStats> arms{arm(1, 1, 1), arm(1, 0, 0)};
  BanditConfig cfg;
  cfg.m = kInfiniteMixing;
  const double explore = 2 * 0.5 * std::sqrt(std::log(2.0));
  EXPECT_NEAR(bandit_score(0.5, arms[0], 2, 0, cfg), 1 + explore, 1e-12);
  EXPECT_NEAR(bandit_score(0.5, arms[1], 2, 0, cfg), explore, 1e-12);
  EXPECT_NEAR(explore, 0.833, 1e-3);
  EXPECT_EQ(bandit_argmax(prior, arms, cfg, false), 0u);
}

TEST(Bandit, FullParanoiaIgnoresMean) {
  BanditConfig cfg;
  cfg.phi = 1;
  // Higher mean but lower minimum loses.
  const std::vector<float> prior{0.5f, 0.5f};
  const std::vector<ArmStats> arms{arm(4, 3.6, -1), arm(4, 0.4, 0.1)};
  EXPECT_EQ(bandit_argmax(prior, arms, cfg, false), 1u);
  cfg.phi = 0;
  EXPECT_EQ(bandit_argmax(prior, arms, cfg, false), 0u);
  cfg.phi = 1;
  cfg.root_exempt_paranoia = true;
  EXPECT_EQ(bandit_argmax(prior, arms, cfg, true), 0u);
  EXPECT_EQ(bandit_argmax(prior, arms, cfg, false), 1u);
}

TEST(Bandit, UnvisitedFirstByPrior) {
  const std::vector<float> prior{0.1f, 0.3f, 0.3f, 0.3f};
  const std::vector<ArmStats> arms{arm(0, 0), arm(2, 2, 1), arm(0, 0), arm(0, 0)};
  EXPECT_EQ(bandit_argmax(prior, arms, BanditConfig{}, false), 2u);
}

TEST(Bandit, ZeroMixingSamplesPolicy) {
  BanditConfig cfg;
  cfg.m = 0;
  std::mt19937_64 rng(7);
  const std::vector<float> prior{0.2f, 0.8f};
  // The deterministic branch would always take arm 0.
  const std::vector<ArmStats> arms{arm(100, 100, 1), arm(100, -100, -1)};
  int ones = 0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) ones += bandit(prior, arms, cfg, false, rng) == 1;
  EXPECT_NEAR(ones / double(kDraws), 0.8, 0.02);
  // At the root the policy is never sampled.
  for (int i = 0; i < 100; ++i) EXPECT_EQ(bandit(prior, arms, cfg, true, rng), 0u);
}

TEST(Bandit, InfiniteMixingNeverSamples) {
  BanditConfig cfg;
  cfg.m = kInfiniteMixing;
  std::mt19937_64 rng(9);
  const std::vector<float> prior{0.01f, 0.99f};
  const std::vector<ArmStats> arms{arm(1, 1, 1), arm(1, -1, -1)};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(bandit(prior, arms, cfg, false, rng), 0u);
}

TEST(Bandit, MixingDecaysWithVisits) {
  BanditConfig cfg;
  cfg.m = 1;
  std::mt19937_64 rng(11);
  const std::vector<float> prior{0.0f, 1.0f};
  // Total visits 0.5: the policy is sampled with probability exp(-0.5).
  const std::vector<ArmStats> arms{arm(0.25, 0.25, 1), arm(0.25, -0.25, -1)};
  int sampled = 0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) sampled += bandit(prior, arms, cfg, false, rng) == 1;
  EXPECT_NEAR(sampled / double(kDraws), std::exp(-0.5), 0.02);
}

TEST(Bandit, MatchesExhaustiveArgmax) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    const FuzzCase f = random_case(rng);
    double margin;
    const std::size_t expect = reference_argmax(f.prior, f.arms, f.cfg, &margin);
    if (margin < 1e-9) continue;
    ASSERT_EQ(bandit_argmax(f.prior, f.arms, f.cfg, false), expect) << "case " << i;
    ++checked;
  }
  EXPECT_GT(checked, 99000);
}

TEST(Bandit, ShiftingValuesKeepsChoice) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> shift(-3, 3);
  for (int i = 0; i < 10000; ++i) {
    FuzzCase f = random_case(rng);
    f.cfg.kind = BanditKind::kUcb1;
    double margin;
    reference_argmax(f.prior, f.arms, f.cfg, &margin);
    if (margin < 1e-9) continue;
    const std::size_t before = bandit_argmax(f.prior, f.arms, f.cfg, false);
    const double c = shift(rng);
    for (auto& a : f.arms) {
      a.q += c * a.n;
      a.m += c;
    }
    ASSERT_EQ(bandit_argmax(f.prior, f.arms, f.cfg, false), before);
  }
}

TEST(NodeStats, BackupExample) {
  NodeStats stats(1024);
  stats.add_visits(42, 7, 1);
  stats.backup(42, 7, 0.5, 1 - 1);
  stats.add_visits(42, 7, 1);
  stats.backup(42, 7, -0.5, 1 - 1);
  const ArmStats a = stats.get(42, 7);
  EXPECT_DOUBLE_EQ(a.n, 2);
  EXPECT_DOUBLE_EQ(a.q, 0);
  EXPECT_DOUBLE_EQ(a.m, -0.5);
}

TEST(NodeStats, VirtualLossNetsToOneVisit) {
  for (double vl : {0.0, 1.0, 3.0}) {
    NodeStats stats(1024);
    stats.add_visits(1, 2, vl);
    EXPECT_DOUBLE_EQ(stats.get(1, 2).n, vl);
    stats.backup(1, 2, 0.0, 1 - vl);
    EXPECT_DOUBLE_EQ(stats.get(1, 2).n, 1);
    EXPECT_DOUBLE_EQ(stats.get(1, 2).q, 0);
  }
}

TEST(NodeStats, MinimumNeverAboveMean) {
  NodeStats stats(64);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> v(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    stats.backup(9, 1, v(rng), 1);
    const ArmStats a = stats.get(9, 1);
    ASSERT_LE(a.m, a.q / a.n + 1e-12);
  }
}

TEST(NodeStats, OverwriteKeepsNewest) {
  NodeStats stats(16);
  EXPECT_EQ(stats.capacity(), 16u);
  for (std::uint64_t k = 0; k <= 16; ++k) stats.backup(k * 7919 + 1, 3, 1.0, 1);
  // The newest key is always present with its own stats.
  EXPECT_DOUBLE_EQ(stats.get(16 * 7919 + 1, 3).n, 1);
  std::size_t present = 0;
  for (std::uint64_t k = 0; k <= 16; ++k) present += stats.get(k * 7919 + 1, 3).n > 0;
  EXPECT_LE(present, 16u);
  EXPECT_LE(stats.occupied(), 16u);
  // An overwritten key reads back as fresh and reinserting it evicts its slot mate.
  for (std::uint64_t k = 0; k <= 16; ++k) {
    const std::uint64_t key = k * 7919 + 1;
    stats.backup(key, 3, 0.25, 1);
    EXPECT_GE(stats.get(key, 3).n, 1);
  }
  stats.clear();
  EXPECT_EQ(stats.occupied(), 0u);
  EXPECT_DOUBLE_EQ(stats.get(1, 3).n, 0);
}

TEST(NodeStats, CapacityRoundsUp) {
  EXPECT_EQ(NodeStats(1000).capacity(), 1024u);
}

bool has_sense(const std::vector<Action>& senses, const char* sq) {
  const Square s = *Square::parse(sq);
  for (const auto& a : senses) {
    if (a.is_sense() && a.from == s) return true;
  }
  return false;
}

TEST(PruneSenses, SingletonGivesB2) {
  const std::vector<WorldState> one{WorldState::initial()};
  const auto senses = prune_senses(one);
  ASSERT_EQ(senses.size(), 1u);
  EXPECT_TRUE(has_sense(senses, "b2"));
}

TEST(PruneSenses, RimDroppedAndOnlyInformativeKept) {
  // Two states differing only in the queenside: the black knight on b8 or c6.
  const std::vector<WorldState> states{
      state_from("rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR/w s KQkq - - - - -"),
      state_from("r1bqkbnr/pppppppp/2n5/8/4P3/8/PPPP1PPP/RNBQKBNR/w s KQkq - - - - -")};
  const auto senses = prune_senses(states);
  EXPECT_FALSE(has_sense(senses, "a8"));
  EXPECT_FALSE(has_sense(senses, "b8"));
  EXPECT_FALSE(has_sense(senses, "g6"));
  EXPECT_FALSE(has_sense(senses, "f3"));
  EXPECT_TRUE(has_sense(senses, "b7"));
  EXPECT_TRUE(has_sense(senses, "c6"));
  EXPECT_TRUE(has_sense(senses, "d5"));
  for (const auto& a : senses) EXPECT_LE(a.from.file(), 3);
}

TEST(PruneSenses, CornerAlwaysCoveredByInterior) {
  for (const auto& x : testing::random_states(200, 3)) {
    const std::vector<WorldState> pair{x, WorldState::initial()};
    for (const auto& a : prune_senses(pair)) {
      EXPECT_GE(a.from.file(), 1);
      EXPECT_LE(a.from.file(), 6);
      EXPECT_GE(a.from.rank(), 1);
      EXPECT_LE(a.from.rank(), 6);
    }
  }
}

TEST(StaticWin, UniformCapture) {
  const std::vector<WorldState> files{state_from("6k1/8/8/8/8/8/8/4K1Q1/w m - - - - - -"),
                                      state_from("6k1/8/p7/8/8/8/8/4K1Q1/w m - - - - - -")};
  const auto g8 = static_win(files);
  ASSERT_TRUE(g8.has_value());
  EXPECT_EQ(to_string(*g8), "move:g1g8");
}

TEST(StaticWin, KingPlacementDiffers) {
  const std::vector<WorldState> states{state_from("6k1/8/8/8/8/8/8/4K1Q1/w m - - - - - -"),
                                       state_from("7k/8/8/8/8/8/8/4K1Q1/w m - - - - - -")};
  EXPECT_FALSE(static_win_move(states).has_value());
}

TEST(StaticWin, SenseSeparatesKingSquares) {
  // King on g8 or h8; the queen on g1 wins on g8, the rook on h1 on h8.
  const std::vector<WorldState> states{
      state_from("6k1/8/8/8/8/8/8/4K1QR/w s - - - - - -"),
      state_from("7k/8/8/8/8/8/8/4K1QR/w s - - - - - -")};
  const auto sense = static_win_sense(states);
  ASSERT_TRUE(sense.has_value());
  EXPECT_TRUE(sense->is_sense());
  EXPECT_GE(sense->from.rank(), 6);
  EXPECT_GE(sense->from.file(), 5);
}

TEST(StaticWin, NoCaptureNoWin) {
  const std::vector<WorldState> start{WorldState::initial()};
  EXPECT_FALSE(static_win(start).has_value());
  EXPECT_FALSE(king_capture(apply_action(WorldState::initial(), Action::sense(Square(9))).state));
}

TEST(StaticWin, KingCaptureSingleState) {
  const auto x = state_from("4k3/8/8/8/8/8/8/4K2R/w m - - - - - -");
  EXPECT_FALSE(king_capture(x).has_value());
  const auto y = state_from("4k3/8/8/8/8/8/8/4R1K1/w m - - - - - -");
  ASSERT_TRUE(king_capture(y).has_value());
  EXPECT_EQ(to_string(*king_capture(y)), "move:e1e8");
  const auto promo = state_from("3k4/4P3/8/8/8/8/8/4K3/w m - - - - - -");
  ASSERT_TRUE(king_capture(promo).has_value());
  EXPECT_EQ(king_capture(promo)->promotion, PieceKind::kQueen);
}

}  // namespace
}  // namespace penumbral
