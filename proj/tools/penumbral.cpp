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

// penumbral: play single games, run tournaments, replay statistics and
// self-play data generation.

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "penumbral/harness/config.hpp"
#include "penumbral/harness/game.hpp"
#include "penumbral/harness/replay_stats.hpp"
#include "penumbral/harness/selfplay.hpp"
#include "penumbral/harness/tournament.hpp"

namespace fs = std::filesystem;
using namespace penumbral;

namespace {

AgentSpec spec_for(const std::string& kind_name, const std::string& weights) {
  const auto kind = parse_agent_kind(kind_name);
  if (!kind) throw CLI::ValidationError("unknown agent kind " + kind_name);
  AgentSpec s = default_spec(*kind);
  s.weights = weights;
  return s;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void print_elo(const EloTable& elo) {
  for (const auto& w : elo.warnings) spdlog::warn("{}", w);
  std::cout << "agent,rating,interval,games,score\n";
  for (const auto& r : elo.ratings) {
    std::cout << r.name << ',' << std::lround(r.rating) << ',' << std::lround(r.interval) << ','
              << r.games << ',' << r.score << '\n';
  }
}

std::vector<GameRecord> read_records(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path)) {
      if (e.path().extension() == ".jsonl") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<GameRecord> records;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) continue;
      try {
        records.push_back(game_from_json(nlohmann::json::parse(line)));
      } catch (const std::exception& e) {
        spdlog::warn("{}:{} skipped: {}", f.string(), n, e.what());
      }
    }
  }
  return records;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconnaissance blind chess engine and experiment harness"};
  app.require_subcommand(1);

  auto* play = app.add_subcommand("play", "Play one game and log it as JSON lines");
  std::string white = "DsmcpMixture", black = "RandomBot", log_path, weights;
  std::uint64_t seed = 1;
  double per_action = 1.0;
  int turn_cap = 150;
  bool proportional = false;
  play->add_option("--white", white, "Agent kind for White")->capture_default_str();
  play->add_option("--black", black, "Agent kind for Black")->capture_default_str();
  play->add_option("--seed", seed)->capture_default_str();
  play->add_option("--log", log_path, "Append the game record to this file");
  play->add_option("--time", per_action, "Seconds per action")->capture_default_str();
  play->add_flag("--proportional", proportional, "Spend a fraction of the remaining clock instead");
  play->add_option("--turn-cap", turn_cap)->capture_default_str();
  play->add_option("--weights", weights, "PNBW1 weight file for DSMCP agents");

  auto* tourney = app.add_subcommand("tourney", "Run a tournament from a TOML file");
  std::string config_path, out_dir;
  tourney->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  tourney->add_option("--out", out_dir, "Directory for games.jsonl and elo.csv")->required();

  auto* stats = app.add_subcommand("stats", "Replay logged games and bucket win rate by max |X|");
  std::string replay_path, csv_path, players_path;
  std::size_t cap = 1'000'000;
  stats->add_option("--replay", replay_path, "A .jsonl file or a directory of them")
      ->required()
      ->check(CLI::ExistingPath);
  stats->add_option("--csv", csv_path, "Bucketed win percentages")->required();
  stats->add_option("--players", players_path, "Per-player max |X| rows");
  stats->add_option("--cap", cap, "Tracking cap per player")->capture_default_str();

  auto* self = app.add_subcommand("selfplay", "Self-play games and PNBS1 synopsis dumps");
  std::size_t games = 1;
  std::string agent = "DsmcpMixture", data_dir;
  double self_time = 0.1;
  self->add_option("--games", games)->capture_default_str();
  self->add_option("--out", data_dir)->required();
  self->add_option("--agent", agent)->capture_default_str();
  self->add_option("--time", self_time, "Seconds per action")->capture_default_str();
  self->add_option("--seed", seed)->capture_default_str();
  self->add_option("--weights", weights);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play) {
      auto w = make_agent(spec_for(white, weights));
      AgentSpec bs = spec_for(black, weights);
      if (bs.name == white) bs.name += "2";
      auto b = make_agent(bs);
      GameOptions o;
      o.seed = seed;
      o.turn_cap = turn_cap;
      o.time.per_action = per_action;
      o.time.proportional = proportional;
      const GameRecord r = play_game(*w, *b, o);
      if (!log_path.empty()) {
        if (fs::path(log_path).has_parent_path()) fs::create_directories(fs::path(log_path).parent_path());
        std::ofstream out(log_path, std::ios::app);
        write_jsonl(out, r);
      } else {
        write_jsonl(std::cout, r);
      }
      if (r.termination == Termination::kTurnCap) spdlog::info("turn cap of {} reached, scored as a draw", turn_cap);
      spdlog::info("{} vs {}: {} ({}), {} turns", r.white, r.black,
                   r.winner ? (*r.winner == Color::kWhite ? "white wins" : "black wins") : "draw",
                   to_string(r.termination), r.turns.size());
      if (r.aborted()) {
        spdlog::error("game aborted: {}", r.error);
        return 2;
      }
      return 0;
    }

    if (*tourney) {
      TournamentConfig cfg = load_tournament_config(config_path);
      fs::create_directories(out_dir);
      std::ofstream games_out = open_out(fs::path(out_dir) / "games.jsonl");
      std::ofstream aborted_out = open_out(fs::path(out_dir) / "aborted.jsonl");
      std::size_t played = 0;
      cfg.options.on_game = [&](const GameRecord& r) {
        if (r.aborted()) {
          spdlog::warn("game {} vs {} aborted and replayed: {}", r.white, r.black, r.error);
          write_jsonl(aborted_out, r);
          return;
        }
        write_jsonl(games_out, r);
        games_out.flush();
        spdlog::info("game {}: {} vs {}, white score {}", ++played, r.white, r.black, r.white_score());
      };
      const TournamentResult res = run_tournament(cfg.agents, cfg.pairings, cfg.options);
      if (res.abandoned) spdlog::warn("{} games failed on every attempt", res.abandoned);
      std::ofstream elo_out = open_out(fs::path(out_dir) / "elo.csv");
      elo_out << "agent,rating,interval,games,score\n";
      for (const auto& r : res.elo.ratings) {
        elo_out << r.name << ',' << r.rating << ',' << r.interval << ',' << r.games << ',' << r.score << '\n';
      }
      print_elo(res.elo);
      return 0;
    }

    if (*stats) {
      const std::vector<GameRecord> records = read_records(replay_path);
      ReplayStatsOptions o;
      o.cap = cap;
      const ReplayStats s = replay_stats(records, o);
      for (const auto& w : s.warnings) spdlog::warn("{}", w);
      std::ofstream csv = open_out(csv_path);
      write_bucket_csv(csv, s);
      if (!players_path.empty()) {
        std::ofstream p = open_out(players_path);
        p << "game,color,agent,max_states,overflowed,score\n";
        for (const auto& row : s.players) {
          p << row.game << ',' << (row.color == Color::kWhite ? "white" : "black") << ',' << row.agent << ','
            << row.max_states << ',' << row.overflowed << ',' << row.score << '\n';
        }
      }
      std::cout << "games " << s.replayed << " skipped " << s.skipped << " median_max_states "
                << s.median_max_states << " spearman " << s.spearman << '\n';
      return 0;
    }

    if (*self) {
      SelfplayOptions o;
      o.games = games;
      o.seed = seed;
      o.agent = spec_for(agent, weights);
      o.time.per_action = self_time;
      std::ofstream synopses = open_out(fs::path(data_dir) / "synopses.pnbs");
      const SelfplayResult r = selfplay(o, synopses);
      std::ofstream games_out = open_out(fs::path(data_dir) / "games.jsonl");
      for (const auto& g : r.games) write_jsonl(games_out, g);
      spdlog::info("{} games, {} synopsis records", r.games.size(), r.examples);
      return 0;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
