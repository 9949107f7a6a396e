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

#include "penumbral/harness/replay_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "penumbral/track/tracker.hpp"

namespace penumbral {
namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

// Index of the half-decade bucket holding n >= 1.
std::size_t bucket_of(std::size_t n) {
  return static_cast<std::size_t>(std::floor(2.0 * std::log10(static_cast<double>(std::max<std::size_t>(n, 1))) + 1e-9));
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> rx = ranks(x.first(n)), ry = ranks(y.first(n));
  const double mean = (static_cast<double>(n) + 1) / 2;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0 || syy == 0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

ReplayStats replay_stats(std::span<const GameRecord> records, const ReplayStatsOptions& options) {
  ReplayStats out;
  const Tracker::Config cfg{.cap = options.cap, .window_steps = options.window};
  for (std::size_t g = 0; g < records.size(); ++g) {
    const GameRecord& r = records[g];
    if (r.aborted()) {
      out.warnings.push_back("game " + std::to_string(g) + " skipped: aborted");
      ++out.skipped;
      continue;
    }
    const ReplayResult rep = replay(r);
    if (!rep.ok) {
      out.warnings.push_back("game " + std::to_string(g) + " skipped: " + rep.mismatch);
      ++out.skipped;
      continue;
    }
    std::array<Tracker, 2> trackers{Tracker(Color::kWhite, cfg), Tracker(Color::kBlack, cfg)};
    try {
      for (std::size_t i = 0; i + 1 < rep.states.size(); ++i) {
        const WorldState& s = rep.states[i];
        const TurnRecord& t = r.turns[i / 2];
        const Action a = i % 2 == 0 ? t.sense : t.requested;
        const Step step = apply_action(s, a);
        if (step.state.is_terminal()) break;
        trackers[index_of(s.side())].observe_own(a, step.actor);
        trackers[index_of(~s.side())].observe_opponent(step.other);
        if (trackers[0].overflowed() && trackers[1].overflowed()) break;
      }
    } catch (const std::exception& e) {
      out.warnings.push_back("game " + std::to_string(g) + " skipped: " + e.what());
      ++out.skipped;
      continue;
    }
    ++out.replayed;
    for (const Color c : {Color::kWhite, Color::kBlack}) {
      const Tracker& t = trackers[index_of(c)];
      PlayerStat p;
      p.game = g;
      p.color = c;
      p.agent = c == Color::kWhite ? r.white : r.black;
      p.overflowed = t.overflowed();
      p.max_states = p.overflowed ? options.cap : t.max_size();
      p.score = c == Color::kWhite ? r.white_score() : 1 - r.white_score();
      out.players.push_back(std::move(p));
    }
  }

  if (out.players.empty()) return out;
  std::vector<double> maxima;
  std::size_t top = 0;
  for (const auto& p : out.players) {
    maxima.push_back(static_cast<double>(p.max_states));
    top = std::max(top, bucket_of(p.max_states));
  }
  std::sort(maxima.begin(), maxima.end());
  const std::size_t n = maxima.size();
  out.median_max_states = n % 2 ? maxima[n / 2] : 0.5 * (maxima[n / 2 - 1] + maxima[n / 2]);

  out.buckets.resize(top + 1);
  for (std::size_t b = 0; b <= top; ++b) {
    out.buckets[b].lo = std::pow(10.0, 0.5 * static_cast<double>(b));
    out.buckets[b].hi = std::pow(10.0, 0.5 * static_cast<double>(b + 1));
  }
  for (const auto& p : out.players) {
    StateBucket& b = out.buckets[bucket_of(p.max_states)];
    ++b.players;
    b.points += p.score;
  }
  std::vector<double> position, win;
  for (std::size_t b = 0; b < out.buckets.size(); ++b) {
    if (out.buckets[b].players < options.min_bucket) continue;
    position.push_back(static_cast<double>(b));
    win.push_back(out.buckets[b].win_pct());
  }
  out.spearman = spearman(position, win);
  return out;
}

void write_bucket_csv(std::ostream& out, const ReplayStats& stats) {
  out << "lo,hi,players,win_pct\n";
  for (const auto& b : stats.buckets) {
    if (!b.players) continue;
    out << b.lo << ',' << b.hi << ',' << b.players << ',' << b.win_pct() << '\n';
  }
}

}  // namespace penumbral
