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

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "penumbral/harness/game.hpp"

namespace penumbral {

struct ReplayStatsOptions {
  std::size_t cap = 1'000'000;  // tracking stops above this many states
  std::size_t window = 4;       // steps kept for backward filtering
  // Buckets with fewer players are left out of the rank correlation.
  std::size_t min_bucket = 5;
};

// One player of one replayed game.
struct PlayerStat {
  std::size_t game = 0;
  Color color = Color::kWhite;
  std::string agent;
  std::size_t max_states = 0;  // equals the cap when tracking overflowed
  bool overflowed = false;
  double score = 0;  // 1 win, 0 loss, 0.5 draw
};

// Players whose max |X| lies in [lo, hi).
struct StateBucket {
  double lo = 0;
  double hi = 0;
  std::size_t players = 0;
  double points = 0;
  double win_pct() const { return players ? 100.0 * points / static_cast<double>(players) : 0.0; }
};

struct ReplayStats {
  std::vector<PlayerStat> players;
  // Half-decade buckets: [1, 3.16), [3.16, 10), [10, 31.6), ...
  std::vector<StateBucket> buckets;
  double median_max_states = 0;
  // Spearman rank correlation between bucket position and win percentage;
  // NaN with fewer than two qualifying buckets.
  double spearman = std::numeric_limits<double>::quiet_NaN();
  std::size_t replayed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Replays each game while tracking both players' possible states and
// records the largest count each player faced. Aborted and unreplayable
// records are skipped with a warning.
ReplayStats replay_stats(std::span<const GameRecord> records, const ReplayStatsOptions& options = {});

// lo,hi,players,win_pct rows, one per non-empty bucket.
void write_bucket_csv(std::ostream& out, const ReplayStats& stats);

// Rank correlation with average ranks for ties; NaN if either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace penumbral
