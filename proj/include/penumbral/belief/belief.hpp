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

#include <chrono>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "penumbral/eval/evaluator.hpp"
#include "penumbral/search/bandit.hpp"
#include "penumbral/search/node_stats.hpp"
#include "penumbral/track/tracker.hpp"

namespace penumbral {

using Clock = std::chrono::steady_clock;

struct BeliefConfig {
  std::size_t particles = 4096;
  std::size_t ell = 128;
  int max_rejections = 512;
  // Most recent tracker steps that keep particles.
  std::size_t window_steps = 8;
  std::chrono::milliseconds min_budget{50};
};

// Tree and bandit key of a limited set: its members and whose view it is.
inline std::uint64_t node_key(const LimitedStateSet& l) {
  return l.owner == Color::kWhite ? l.hash : l.hash ^ 0xA5A5F00DF00DA5A5ULL;
}

// The opponent's policy as seen from inside its own limited state sets.
struct OpponentModel {
  std::shared_ptr<const Evaluator> evaluator;
  HeadsetId headset{kTopHeadset, ""};
  BanditConfig bandit;
};

// Policies of the opponent at recently seen limited sets, by set hash.
class PolicyCache {
 public:
  explicit PolicyCache(std::size_t limit = 1 << 14) : limit_(limit) {}

  struct Entry {
    std::vector<Action> actions;
    std::vector<float> policy;
  };
  const Entry& get(const LimitedStateSet& j, const OpponentModel& model);
  void clear() { entries_.clear(); }

 private:
  std::size_t limit_;
  absl::flat_hash_map<std::uint64_t, Entry> entries_;
};

struct Draw {
  LimitedStateSet set;
  int rejections = 0;
  bool fallback = false;
};

// One particle for step i from the particles of step i - 1. `prev_step` is
// the tracker's step i - 1, which names the transition: an own action when
// the observer acted, otherwise the opponent acted. `x` is the tracker's
// states at step i and `owner` the opponent. After max_rejections rejected
// candidates, or when prev is empty, returns a singleton drawn uniformly
// from x.
Draw draw_sample(std::span<const LimitedStateSet> prev, const TrackedStep& prev_step,
                 const PossibleStateSet& x, Color owner, NodeStats& stats,
                 const OpponentModel& model, PolicyCache& cache, int max_rejections,
                 std::size_t ell, std::mt19937_64& rng);

// Opponent-perspective particles for the recent steps of one tracker.
class BeliefFilter {
 public:
  BeliefFilter(Color self, BeliefConfig cfg, OpponentModel model);

  void reset(const WorldState& initial);

  // Drops particles with no member in their step's states, for every step
  // whose state count changed since the last call, and forgets steps that
  // left the window. Returns the number of particles removed.
  std::size_t filter(const Tracker& tracker);

  // Fills deficits oldest step first until none remain or `deadline`
  // passes, or after max_draws draws. Step 0 is fixed. Returns the number
  // of draws.
  std::size_t repopulate(const Tracker& tracker, NodeStats& stats, Clock::time_point deadline,
                         std::mt19937_64& rng,
                         std::size_t max_draws = std::numeric_limits<std::size_t>::max());

  std::size_t deficit(const Tracker& tracker) const;
  // Wall-clock allowance while the opponent acts: the larger of the
  // minimum budget and the deficit times the recent cost of one draw.
  Clock::duration budget(const Tracker& tracker) const;

  // Empty when the step holds no particles.
  std::span<const LimitedStateSet> at(std::size_t step) const;
  // Keeps only the first `keep` particles of a step.
  void truncate(std::size_t step, std::size_t keep);
  std::size_t fallbacks() const { return fallbacks_; }
  std::size_t draws() const { return draws_; }
  const BeliefConfig& config() const { return cfg_; }
  const OpponentModel& model() const { return model_; }

 private:
  struct StepParticles {
    std::vector<LimitedStateSet> particles;
    std::size_t seen_size = 0;
  };
  std::size_t oldest_kept(const Tracker& tracker) const;

  Color self_;
  BeliefConfig cfg_;
  OpponentModel model_;
  PolicyCache cache_;
  std::map<std::size_t, StepParticles> steps_;
  double draw_seconds_ = 1e-4;
  std::size_t fallbacks_ = 0;
  std::size_t draws_ = 0;
};

}  // namespace penumbral
