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
#include <sstream>

#include "penumbral/eval/action_index.hpp"
#include "penumbral/harness/config.hpp"
#include "penumbral/harness/elo.hpp"
#include "penumbral/harness/game.hpp"
#include "penumbral/harness/replay_stats.hpp"
#include "penumbral/harness/selfplay.hpp"
#include "penumbral/harness/tournament.hpp"
#include "penumbral/track/errors.hpp"
#include "test_util.hpp"

namespace penumbral {
namespace {

using testing::kShortGame;

// Plays a fixed list of actions, one per call to act().
class ScriptedAgent final : public Agent {
 public:
  ScriptedAgent(std::string name, std::vector<std::string> actions)
      : name_(std::move(name)), actions_(std::move(actions)) {}
  const std::string& name() const override { return name_; }
  void new_game(Color, std::string_view, std::uint64_t) override { next_ = 0; }
  void observe_own(const Action&, const Observation&) override {}
  void observe_opponent(const Observation&) override {
    if (throw_on_observe) throw TrackingError("lost the true state");
  }
  Action act(Clock::time_point) override { return *parse_action(actions_.at(next_++)); }
  bool throw_on_observe = false;

 private:
  std::string name_;
  std::vector<std::string> actions_;
  std::size_t next_ = 0;
};

std::pair<ScriptedAgent, ScriptedAgent> short_game_agents() {
  std::vector<std::string> white, black;
  for (std::size_t i = 0; i < std::size(kShortGame); ++i) {
    auto& side = i % 2 == 0 ? white : black;
    side.push_back(std::string("sense:") + kShortGame[i].sense);
    side.push_back(std::string("move:") + kShortGame[i].move);
  }
  return {ScriptedAgent("ScriptWhite", white), ScriptedAgent("ScriptBlack", black)};
}

GameRecord short_game() {
  auto [w, b] = short_game_agents();
  return play_game(w, b, {});
}

// The record without its timing fields.
nlohmann::json untimed(const GameRecord& r) {
  nlohmann::json j = to_json(r);
  j.erase("total_ms");
  for (auto& t : j["turns"]) t.erase("ms");
  return j;
}

GameRecord bot_game(AgentKind white, AgentKind black, std::uint64_t seed) {
  auto w = make_agent(default_spec(white));
  AgentSpec bs = default_spec(black);
  bs.name += "2";
  auto b = make_agent(bs);
  GameOptions o;
  o.seed = seed;
  return play_game(*w, *b, o);
}

AgentSpec quick_dsmcp(AgentKind kind) {
  AgentSpec s = default_spec(kind);
  s.belief.particles = 32;
  s.belief.ell = 16;
  s.planner.ell = 16;
  s.planner.batch = 16;
  s.tracker_cap = 20'000;
  s.table_capacity = 1 << 14;
  return s;
}

TEST(Agents, KindNamesRoundTrip) {
  for (AgentKind k : {AgentKind::kDsmcpMixture, AgentKind::kDsmcpTree, AgentKind::kDsmcpCache,
                      AgentKind::kNetworkOnly, AgentKind::kDsmcpSimple, AgentKind::kRandomBot,
                      AgentKind::kAttackerBot, AgentKind::kMaterialBot}) {
    EXPECT_EQ(parse_agent_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_agent_kind("Stockfish"));
}

TEST(Agents, VariantParameters) {
  EXPECT_EQ(default_spec(AgentKind::kDsmcpMixture).planner.bandit.m, 1.0);
  EXPECT_TRUE(std::isinf(default_spec(AgentKind::kDsmcpTree).planner.bandit.m));
  EXPECT_EQ(default_spec(AgentKind::kDsmcpCache).planner.bandit.m, 0.0);
  EXPECT_FALSE(default_spec(AgentKind::kNetworkOnly).planner.search);
  EXPECT_TRUE(default_spec(AgentKind::kNetworkOnly).planner.static_analysis);
  EXPECT_FALSE(default_spec(AgentKind::kDsmcpSimple).planner.static_analysis);
  EXPECT_TRUE(default_spec(AgentKind::kDsmcpSimple).planner.search);
  EXPECT_TRUE(is_dsmcp(AgentKind::kNetworkOnly));
  EXPECT_FALSE(is_dsmcp(AgentKind::kMaterialBot));
}

TEST(PlayGame, ScriptedShortGameEndsWithKingCapture) {
  const GameRecord r = short_game();
  EXPECT_EQ(r.termination, Termination::kKingCapture);
  ASSERT_TRUE(r.winner);
  EXPECT_EQ(*r.winner, Color::kWhite);
  ASSERT_EQ(r.turns.size(), std::size(kShortGame));
  const TurnRecord& last = r.turns.back();
  EXPECT_EQ(to_string(last.sense), "sense:g6");
  EXPECT_EQ(to_string(last.executed), "move:g6e8");
  ASSERT_TRUE(last.capture);
  EXPECT_EQ(last.capture->name(), "e8");
  // The queen asked for h5e8 on turn 7 and stopped on g6.
  EXPECT_EQ(to_string(r.turns[12].requested), "move:h5e8");
  EXPECT_EQ(to_string(r.turns[12].executed), "move:h5g6");
}

TEST(PlayGame, RandomBotsAreDeterministic) {
  for (std::uint64_t seed : {1, 2, 3}) {
    EXPECT_EQ(untimed(bot_game(AgentKind::kRandomBot, AgentKind::kRandomBot, seed)),
              untimed(bot_game(AgentKind::kRandomBot, AgentKind::kRandomBot, seed)));
  }
  EXPECT_NE(untimed(bot_game(AgentKind::kRandomBot, AgentKind::kRandomBot, 1)),
            untimed(bot_game(AgentKind::kRandomBot, AgentKind::kRandomBot, 2)));
}

TEST(PlayGame, TurnCapIsADraw) {
  auto w = make_agent(default_spec(AgentKind::kRandomBot));
  AgentSpec bs = default_spec(AgentKind::kRandomBot);
  bs.name = "Other";
  auto b = make_agent(bs);
  GameOptions o;
  o.turn_cap = 2;
  const GameRecord r = play_game(*w, *b, o);
  EXPECT_EQ(r.termination, Termination::kTurnCap);
  EXPECT_FALSE(r.winner);
  EXPECT_EQ(r.turns.size(), 4u);
  EXPECT_EQ(r.white_score(), 0.5);
  EXPECT_EQ(to_json(r)["termination"], "turn_cap");
  EXPECT_TRUE(replay(r).ok);
}

TEST(PlayGame, WrongPhaseActionAborts) {
  ScriptedAgent w("W", {"move:e2e4"});
  ScriptedAgent b("B", {"sense:e2"});
  const GameRecord r = play_game(w, b, {});
  EXPECT_TRUE(r.aborted());
  EXPECT_NE(r.error.find("did not sense"), std::string::npos);
}

TEST(PlayGame, UnrequestableMoveAborts) {
  ScriptedAgent w("W", {"sense:e2", "move:e2e5"});
  ScriptedAgent b("B", {"sense:e2"});
  const GameRecord r = play_game(w, b, {});
  EXPECT_TRUE(r.aborted());
  EXPECT_NE(r.error.find("requested"), std::string::npos);
}

TEST(PlayGame, TrackingFailureAborts) {
  ScriptedAgent w("W", {"sense:e2", "move:e2e4"});
  ScriptedAgent b("B", {"sense:e2"});
  b.throw_on_observe = true;
  const GameRecord r = play_game(w, b, {});
  EXPECT_TRUE(r.aborted());
  EXPECT_FALSE(r.winner);
  EXPECT_EQ(r.error, "lost the true state");
}

TEST(GameRecordJson, RoundTrip) {
  const GameRecord r = bot_game(AgentKind::kAttackerBot, AgentKind::kMaterialBot, 4);
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(to_json(game_from_json(j)), j);

  std::stringstream io;
  write_jsonl(io, r);
  write_jsonl(io, short_game());
  const auto back = read_jsonl(io);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(to_json(back[0]), j);
}

TEST(GameRecordJson, RejectsOtherVersions) {
  nlohmann::json j = to_json(short_game());
  j["v"] = 2;
  EXPECT_THROW(game_from_json(j), std::invalid_argument);
  j.erase("v");
  EXPECT_THROW(game_from_json(j), std::invalid_argument);
}

TEST(Replay, ReproducesEveryObservation) {
  std::vector<GameRecord> records{short_game()};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    records.push_back(bot_game(AgentKind::kRandomBot, AgentKind::kRandomBot, seed));
    records.push_back(bot_game(AgentKind::kAttackerBot, AgentKind::kMaterialBot, seed));
    records.push_back(bot_game(AgentKind::kMaterialBot, AgentKind::kAttackerBot, seed));
  }
  for (const auto& r : records) {
    ASSERT_FALSE(r.aborted()) << r.error;
    // Through the text form, as a logged game would be read back.
    const ReplayResult rep = replay(game_from_json(nlohmann::json::parse(to_json(r).dump())));
    EXPECT_TRUE(rep.ok) << rep.mismatch;
    EXPECT_EQ(rep.states.size(), 2 * r.turns.size() + 1);
  }
}

TEST(Replay, DetectsTampering) {
  GameRecord r = short_game();
  GameRecord wrong_move = r;
  wrong_move.turns[2].executed = *parse_action("move:d2d3");
  EXPECT_FALSE(replay(wrong_move).ok);

  nlohmann::json j = to_json(r);
  j["turns"][0]["sense_result"] = "f5. g5. h5.";
  EXPECT_FALSE(replay(game_from_json(j)).ok);

  GameRecord wrong_winner = r;
  wrong_winner.winner = Color::kBlack;
  EXPECT_FALSE(replay(wrong_winner).ok);

  GameRecord cut = r;
  cut.turns.pop_back();
  EXPECT_FALSE(replay(cut).ok);
}

TEST(Dsmcp, EveryActionIsLegal) {
  for (AgentKind kind : {AgentKind::kDsmcpMixture, AgentKind::kDsmcpTree, AgentKind::kDsmcpCache,
                         AgentKind::kNetworkOnly, AgentKind::kDsmcpSimple}) {
    for (std::uint64_t seed : {1, 2}) {
      auto w = make_agent(quick_dsmcp(kind));
      auto b = make_agent(default_spec(seed == 1 ? AgentKind::kRandomBot : AgentKind::kAttackerBot));
      GameOptions o;
      o.seed = seed;
      o.turn_cap = 25;
      o.time.per_action = 0.005;
      std::size_t checked = 0;
      o.on_step = [&](const WorldState& s, const Action& a, const Step& step) {
        if (s.side() != Color::kWhite) return;
        const auto legal = legal_actions(s);
        const Action done = a.is_sense() ? a : step.actor.executed.value_or(Action::pass());
        EXPECT_NE(std::find(legal.begin(), legal.end(), done), legal.end()) << to_string(a);
        if (!a.is_sense()) {
          const auto req = requestable_actions(s);
          EXPECT_NE(std::find(req.begin(), req.end(), a), req.end()) << to_string(a);
        }
        ++checked;
      };
      const GameRecord r = play_game(*w, *b, o);
      EXPECT_FALSE(r.aborted()) << to_string(kind) << ": " << r.error;
      EXPECT_GT(checked, 0u);
      EXPECT_TRUE(replay(r).ok);
    }
  }
}

TEST(Dsmcp, ReportsTrackedStates) {
  auto w = make_agent(quick_dsmcp(AgentKind::kDsmcpMixture));
  auto b = make_agent(default_spec(AgentKind::kRandomBot));
  GameOptions o;
  o.turn_cap = 4;
  o.time.per_action = 0.005;
  const GameRecord r = play_game(*w, *b, o);
  ASSERT_FALSE(r.turns.empty());
  for (const auto& t : r.turns) {
    EXPECT_FALSE(t.states_black);
    if (t.states_white) {
      EXPECT_GE(*t.states_white, 1u);
    }
  }
  EXPECT_TRUE(r.turns.front().states_white);
}

TEST(Schedule, TwoAgentsAlternateColors) {
  const auto fixtures = schedule(2, {}, 10);
  ASSERT_EQ(fixtures.size(), 10u);
  int white0 = 0;
  for (const auto& f : fixtures) white0 += f.white == 0;
  EXPECT_EQ(white0, 5);
}

TEST(Schedule, ColorBalancePerOrderedPair) {
  for (std::size_t games : {1, 4, 7}) {
    const auto fixtures = schedule(4, {}, games);
    EXPECT_EQ(fixtures.size(), 6 * games);
    std::map<std::pair<std::size_t, std::size_t>, int> count;
    for (const auto& f : fixtures) count[{f.white, f.black}]++;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        const int ab = count[{a, b}], ba = count[{b, a}];
        EXPECT_LE(std::abs(ab - ba), 1);
        EXPECT_EQ(ab + ba, static_cast<int>(games));
      }
    }
  }
}

TEST(Schedule, ExplicitPairings) {
  const std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 2}};
  const auto fixtures = schedule(3, pairs, 4);
  ASSERT_EQ(fixtures.size(), 4u);
  for (const auto& f : fixtures) EXPECT_NE(f.white, 1u);
}

TEST(Tournament, PlaysScheduleAndRates) {
  std::vector<AgentSpec> specs{default_spec(AgentKind::kRandomBot),
                               default_spec(AgentKind::kAttackerBot)};
  TournamentOptions o;
  o.games_per_pair = 10;
  std::size_t seen = 0;
  o.on_game = [&](const GameRecord&) { ++seen; };
  const TournamentResult r = run_tournament(specs, {}, o);
  EXPECT_EQ(r.games.size(), 10u);
  EXPECT_EQ(seen, 10u);
  int random_white = 0;
  for (const auto& g : r.games) random_white += g.white == "RandomBot";
  EXPECT_EQ(random_white, 5);
  ASSERT_TRUE(r.elo.find("RandomBot"));
  EXPECT_EQ(r.elo.find("RandomBot")->rating, 1000.0);
  EXPECT_TRUE(r.elo.find("AttackerBot"));
}

TEST(Tournament, SameSeedSameGames) {
  std::vector<AgentSpec> specs{default_spec(AgentKind::kRandomBot),
                               default_spec(AgentKind::kMaterialBot)};
  TournamentOptions o;
  o.games_per_pair = 4;
  const auto a = run_tournament(specs, {}, o);
  const auto b = run_tournament(specs, {}, o);
  ASSERT_EQ(a.games.size(), b.games.size());
  for (std::size_t i = 0; i < a.games.size(); ++i) EXPECT_EQ(untimed(a.games[i]), untimed(b.games[i]));
}

TEST(Tournament, WorkersGiveTheSameGames) {
  std::vector<AgentSpec> specs{default_spec(AgentKind::kRandomBot),
                               default_spec(AgentKind::kAttackerBot)};
  TournamentOptions o;
  o.games_per_pair = 6;
  const auto serial = run_tournament(specs, {}, o);
  o.workers = 3;
  const auto parallel = run_tournament(specs, {}, o);
  ASSERT_EQ(serial.games.size(), parallel.games.size());
  for (std::size_t i = 0; i < serial.games.size(); ++i) {
    EXPECT_EQ(untimed(serial.games[i]), untimed(parallel.games[i]));
  }
}

std::vector<GameResult> head_to_head(const std::string& a, const std::string& b, int a_wins,
                                     int b_wins, int draws = 0) {
  std::vector<GameResult> out;
  auto add = [&](double a_score) {
    // Colors alternate so that the fit sees both orders.
    if (out.size() % 2) {
      out.push_back({b, a, 1 - a_score});
    } else {
      out.push_back({a, b, a_score});
    }
  };
  for (int i = 0; i < a_wins; ++i) add(1);
  for (int i = 0; i < b_wins; ++i) add(0);
  for (int i = 0; i < draws; ++i) add(0.5);
  return out;
}

TEST(Elo, EvenResultsGiveEqualRatings) {
  const auto results = head_to_head("RandomBot", "X", 50, 50);
  const EloTable t = estimate_elo(results);
  EXPECT_NEAR(t.find("X")->rating, 1000.0, 1e-6);
  EXPECT_EQ(t.find("RandomBot")->interval, 0.0);
  EXPECT_GT(t.find("X")->interval, 0.0);
}

TEST(Elo, ThreeToOneGivesLogisticGap) {
  const double expected = 400.0 * std::log10(3.0);
  EloOptions mle;
  mle.prior_sigma = 0;
  const auto results = head_to_head("RandomBot", "X", 100, 300);
  const EloTable t = estimate_elo(results, mle);
  EXPECT_NEAR(t.find("X")->rating - 1000.0, expected, 1e-6);
  EXPECT_NEAR(elo_gap(0.75), expected, 1e-9);
  // The default prior pulls the gap slightly toward zero.
  const EloTable shrunk = estimate_elo(results);
  EXPECT_LT(shrunk.find("X")->rating - 1000.0, expected);
  EXPECT_GT(shrunk.find("X")->rating - 1000.0, expected - 5);
}

TEST(Elo, DrawsCountHalf) {
  EloOptions mle;
  mle.prior_sigma = 0;
  const EloTable draws = estimate_elo(head_to_head("RandomBot", "X", 0, 0, 40), mle);
  EXPECT_NEAR(draws.find("X")->rating, 1000.0, 1e-6);
  // Two wins and two draws score 75%.
  const EloTable mixed = estimate_elo(head_to_head("RandomBot", "X", 0, 200, 200), mle);
  EXPECT_NEAR(mixed.find("X")->rating - 1000.0, 400.0 * std::log10(3.0), 1e-6);
}

TEST(Elo, IdenticalAgentsIntervalCoversZero) {
  std::mt19937_64 rng(11);
  std::vector<GameResult> results;
  for (int i = 0; i < 400; ++i) {
    results.push_back({i % 2 ? "A" : "B", i % 2 ? "B" : "A", std::bernoulli_distribution(0.5)(rng) ? 1.0 : 0.0});
  }
  EloOptions o;
  o.anchor = "A";
  const EloTable t = estimate_elo(results, o);
  const EloRating* b = t.find("B");
  EXPECT_LE(std::abs(b->rating - 1000.0), b->interval);
}

TEST(Elo, CycleGivesOverlappingRatings) {
  std::vector<GameResult> results;
  for (const auto& [a, b] : {std::pair{"RandomBot", "Y"}, {"Y", "Z"}, {"Z", "RandomBot"}}) {
    const auto part = head_to_head(a, b, 60, 40);
    results.insert(results.end(), part.begin(), part.end());
  }
  const EloTable t = estimate_elo(results);
  for (const auto& r : t.ratings) {
    for (const auto& s : t.ratings) {
      EXPECT_LE(std::abs(r.rating - s.rating), std::max(r.interval, s.interval) + 1e-9);
    }
  }
  EXPECT_NEAR(t.find("Y")->rating, 1000.0, 1e-6);
}

TEST(Elo, PredictionsIgnoreAnchorShift) {
  std::vector<GameResult> results = head_to_head("RandomBot", "X", 30, 70);
  const auto more = head_to_head("X", "W", 45, 55);
  results.insert(results.end(), more.begin(), more.end());
  EloOptions low, high;
  high.anchor_rating = 1600;
  const EloTable a = estimate_elo(results, low);
  const EloTable b = estimate_elo(results, high);
  for (const char* p : {"RandomBot", "X", "W"}) {
    for (const char* q : {"RandomBot", "X", "W"}) {
      EXPECT_NEAR(a.predict(p, q), b.predict(p, q), 1e-9);
    }
    EXPECT_NEAR(b.find(p)->rating - a.find(p)->rating, 600.0, 1e-6);
  }
  EXPECT_EQ(b.find("RandomBot")->rating, 1600.0);
}

TEST(Elo, DisconnectedGraphAnchorsEachComponent) {
  std::vector<GameResult> results = head_to_head("RandomBot", "X", 50, 50);
  const auto other = head_to_head("P", "Q", 25, 75);
  results.insert(results.end(), other.begin(), other.end());
  const EloTable t = estimate_elo(results);
  ASSERT_EQ(t.anchors.size(), 2u);
  EXPECT_FALSE(t.warnings.empty());
  EXPECT_EQ(t.find("RandomBot")->rating, 1000.0);
  EXPECT_EQ(t.find("P")->rating, 1000.0);
  EXPECT_NE(t.find("P")->component, t.find("X")->component);
  EXPECT_GT(t.find("Q")->rating, 1150.0);
}

TEST(Elo, OneSidedResultStaysFinite) {
  const EloTable t = estimate_elo(head_to_head("RandomBot", "X", 0, 20));
  EXPECT_TRUE(std::isfinite(t.find("X")->rating));
  EXPECT_GT(t.find("X")->rating, 1300.0);
}

TEST(Spearman, RanksWithTies) {
  const std::vector<double> x{1, 2, 3, 4}, up{10, 20, 30, 40}, down{4, 3, 2, 1};
  EXPECT_NEAR(spearman(x, up), 1.0, 1e-12);
  EXPECT_NEAR(spearman(x, down), -1.0, 1e-12);
  const std::vector<double> tied{1, 1, 2, 2};
  EXPECT_NEAR(spearman(x, tied), std::sqrt(0.8), 1e-12);
  EXPECT_TRUE(std::isnan(spearman(x, std::vector<double>{5, 5, 5, 5})));
  EXPECT_TRUE(std::isnan(spearman(std::vector<double>{1}, std::vector<double>{2})));
}

TEST(ReplayStats, EmptyInput) {
  const ReplayStats s = replay_stats({});
  EXPECT_TRUE(s.players.empty());
  std::ostringstream csv;
  write_bucket_csv(csv, s);
  EXPECT_EQ(csv.str(), "lo,hi,players,win_pct\n");
}

TEST(ReplayStats, ShortGameReachesAtLeast238) {
  const std::vector<GameRecord> records{short_game()};
  const ReplayStats s = replay_stats(records);
  ASSERT_EQ(s.players.size(), 2u);
  EXPECT_GE(s.players[0].max_states, 238u);
  EXPECT_EQ(s.players[0].score, 1.0);
  EXPECT_EQ(s.players[1].score, 0.0);
}

TEST(ReplayStats, RecountIsDeterministicAndSkipsBadRecords) {
  std::vector<GameRecord> records;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    records.push_back(bot_game(AgentKind::kMaterialBot, AgentKind::kAttackerBot, seed));
  }
  GameRecord broken = records[0];
  broken.turns[0].executed = *parse_action("move:a2a3");
  records.push_back(broken);
  GameRecord aborted = records[1];
  aborted.termination = Termination::kError;
  records.push_back(aborted);

  const ReplayStats a = replay_stats(records);
  const ReplayStats b = replay_stats(records);
  EXPECT_EQ(a.replayed, 4u);
  EXPECT_EQ(a.skipped, 2u);
  EXPECT_EQ(a.warnings.size(), 2u);
  ASSERT_EQ(a.players.size(), b.players.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.players.size(); ++i) {
    EXPECT_EQ(a.players[i].max_states, b.players[i].max_states);
    total += 1;
  }
  EXPECT_EQ(total, 8u);
  std::size_t bucketed = 0;
  for (const auto& bucket : a.buckets) bucketed += bucket.players;
  EXPECT_EQ(bucketed, 8u);
}

TEST(ReplayStats, CapMarksOverflow) {
  const std::vector<GameRecord> records{short_game()};
  ReplayStatsOptions o;
  o.cap = 50;
  const ReplayStats s = replay_stats(records, o);
  ASSERT_EQ(s.players.size(), 2u);
  EXPECT_TRUE(s.players[0].overflowed);
  EXPECT_EQ(s.players[0].max_states, 50u);
}

TEST(Config, ParsesAgentsPairingsAndOptions) {
  const TournamentConfig c = parse_tournament_config(R"(
games_per_pair = 12
seed = 9
turn_cap = 80
[time]
per_action = 0.25
proportional = true
[elo]
anchor = "MaterialBot"
rating = 1200
[[agents]]
kind = "DsmcpTree"
name = "tree"
c = 1.5
kappa = 0.25
phi = 0.1
bandit_kind = "avop"
ell = 64
depth_sense = 3
depth_move = 5
particles = 100
[[agents]]
kind = "DsmcpMixture"
m = "inf"
[[agents]]
kind = "MaterialBot"
[[pairings]]
a = "tree"
b = "MaterialBot"
)");
  ASSERT_EQ(c.agents.size(), 3u);
  EXPECT_EQ(c.agents[0].name, "tree");
  EXPECT_TRUE(std::isinf(c.agents[0].planner.bandit.m));
  EXPECT_EQ(c.agents[0].planner.bandit.c, 1.5);
  EXPECT_EQ(c.agents[0].planner.caution, 0.25);
  EXPECT_EQ(c.agents[0].planner.bandit.phi, 0.1);
  EXPECT_EQ(c.agents[0].planner.bandit.kind, BanditKind::kAvop);
  EXPECT_EQ(c.agents[0].planner.ell, 64u);
  EXPECT_EQ(c.agents[0].planner.depth_sense, 3);
  EXPECT_EQ(c.agents[0].planner.depth_move, 5);
  EXPECT_EQ(c.agents[0].belief.particles, 100u);
  EXPECT_EQ(c.agents[1].name, "DsmcpMixture");
  EXPECT_TRUE(std::isinf(c.agents[1].planner.bandit.m));
  ASSERT_EQ(c.pairings.size(), 1u);
  EXPECT_EQ(c.pairings[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(c.options.games_per_pair, 12u);
  EXPECT_EQ(c.options.seed, 9u);
  EXPECT_EQ(c.options.turn_cap, 80);
  EXPECT_EQ(c.options.time.per_action, 0.25);
  EXPECT_TRUE(c.options.time.proportional);
  EXPECT_EQ(c.options.elo.anchor, "MaterialBot");
  EXPECT_EQ(c.options.elo.anchor_rating, 1200);
}

TEST(Config, RejectsMistakes) {
  const char* two = "[[agents]]\nkind = \"RandomBot\"\n[[agents]]\nkind = \"AttackerBot\"\n";
  EXPECT_NO_THROW(parse_tournament_config(two));
  EXPECT_THROW(parse_tournament_config(std::string(two) + "colour = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_tournament_config("[[agents]]\nkind = \"RandomBot\"\n"), std::invalid_argument);
  EXPECT_THROW(parse_tournament_config("[[agents]]\nkind = \"Nope\"\n[[agents]]\nkind = \"RandomBot\"\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_tournament_config("[[agents]]\nkind = \"RandomBot\"\n[[agents]]\nkind = \"RandomBot\"\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_tournament_config(std::string(two) + "[[pairings]]\na = \"RandomBot\"\nb = \"X\"\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_tournament_config("games_per_pair = \"ten\"\n" + std::string(two)),
               std::invalid_argument);
  EXPECT_THROW(parse_tournament_config("games_per_pair = = 3"), std::invalid_argument);
}

TEST(Selfplay, ExamplesFollowTheGame) {
  const GameRecord r = short_game();
  std::mt19937_64 rng(3);
  const auto examples = extract_examples(r, {}, rng);
  // One per action, the final capture included.
  ASSERT_EQ(examples.size(), 2 * r.turns.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const Color actor = i / 2 % 2 == 0 ? Color::kWhite : Color::kBlack;
    EXPECT_EQ(examples[i].synopsis.perspective, actor);
    EXPECT_EQ(examples[i].value, actor == Color::kWhite ? 1 : -1);
    const TurnRecord& t = r.turns[i / 2];
    EXPECT_EQ(examples[i].action, action_index(i % 2 == 0 ? t.sense : t.requested));
  }
}

TEST(Selfplay, WritesReadableSynopses) {
  SelfplayOptions o;
  o.games = 1;
  o.agent = quick_dsmcp(AgentKind::kDsmcpMixture);
  o.turn_cap = 6;
  o.time.per_action = 0.005;
  std::stringstream out;
  const SelfplayResult r = selfplay(o, out);
  ASSERT_EQ(r.games.size(), 1u);
  EXPECT_GT(r.examples, 0u);
  std::size_t read = 0;
  const GameRecord& g = r.games[0];
  while (auto rec = read_synopsis_record(out)) {
    const int expected = g.winner ? (*g.winner == rec->synopsis.perspective ? 1 : -1) : 0;
    EXPECT_EQ(rec->value, expected);
    ++read;
  }
  EXPECT_EQ(read, r.examples);
}

}  // namespace
}  // namespace penumbral
