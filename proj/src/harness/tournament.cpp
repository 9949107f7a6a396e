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

#include "penumbral/harness/tournament.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include "penumbral/core/zobrist.hpp"

namespace penumbral {

std::vector<Fixture> schedule(std::size_t agents,
                              std::span<const std::pair<std::size_t, std::size_t>> pairings,
                              std::size_t games_per_pair) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs(pairings.begin(), pairings.end());
  if (pairs.empty()) {
    for (std::size_t a = 0; a < agents; ++a) {
      for (std::size_t b = a + 1; b < agents; ++b) pairs.emplace_back(a, b);
    }
  }
  std::vector<Fixture> out;
  out.reserve(pairs.size() * games_per_pair);
  for (const auto& [a, b] : pairs) {
    for (std::size_t g = 0; g < games_per_pair; ++g) {
      out.push_back(g % 2 == 0 ? Fixture{a, b} : Fixture{b, a});
    }
  }
  return out;
}

std::vector<GameResult> game_results(std::span<const GameRecord> games) {
  std::vector<GameResult> out;
  for (const auto& g : games) {
    if (!g.aborted()) out.push_back({g.white, g.black, g.white_score()});
  }
  return out;
}

double score_fraction(std::span<const GameRecord> games, const std::string& name) {
  double points = 0, played = 0;
  for (const auto& g : games) {
    if (g.aborted()) continue;
    if (g.white == name) {
      points += g.white_score();
      played += 1;
    } else if (g.black == name) {
      points += 1 - g.white_score();
      played += 1;
    }
  }
  return played > 0 ? points / played : 0.0;
}

TournamentResult run_tournament(std::span<const AgentSpec> agents,
                                std::span<const std::pair<std::size_t, std::size_t>> pairings,
                                const TournamentOptions& options) {
  const std::vector<Fixture> fixtures = schedule(agents.size(), pairings, options.games_per_pair);
  std::vector<std::optional<GameRecord>> done(fixtures.size());
  TournamentResult result;
  std::mutex mu;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= fixtures.size()) return;
      const auto white = make_agent(agents[fixtures[i].white]);
      const auto black = make_agent(agents[fixtures[i].black]);
      for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        GameOptions game;
        game.seed = mix64(options.seed * 0x9E3779B97F4A7C15ULL + i * 0x100 + static_cast<std::uint64_t>(attempt));
        game.turn_cap = options.turn_cap;
        game.time = options.time;
        GameRecord rec = play_game(*white, *black, game);
        std::lock_guard lock(mu);
        if (options.on_game) options.on_game(rec);
        if (!rec.aborted()) {
          done[i] = std::move(rec);
          break;
        }
        result.aborted.push_back(std::move(rec));
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, fixtures.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  for (auto& g : done) {
    if (g) {
      result.games.push_back(std::move(*g));
    } else {
      ++result.abandoned;
    }
  }
  const std::vector<GameResult> results = game_results(result.games);
  result.elo = estimate_elo(results, options.elo);
  return result;
}

}  // namespace penumbral
