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

#include "penumbral/belief/belief.hpp"

#include <algorithm>

#include "penumbral/belief/progress.hpp"
#include "penumbral/core/rules.hpp"
#include "penumbral/eval/action_index.hpp"
#include "penumbral/search/analysis.hpp"
#include "penumbral/track/synopsis.hpp"

namespace penumbral {
namespace {

std::size_t uniform_index(std::size_t n, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool meets(const std::vector<WorldState>& states, const PossibleStateSet& x) {
  for (const auto& s : states) {
    if (x.contains(s)) return true;
  }
  return false;
}

// The opponent acts at step i - 1: it picks an action with the bandit and
// every member showing the pivot's observation moves on.
std::optional<LimitedStateSet> opponent_transition(const LimitedStateSet& j,
                                                   const PossibleStateSet& prev_x,
                                                   const PossibleStateSet& x, NodeStats& stats,
                                                   const OpponentModel& model, PolicyCache& cache,
                                                   std::size_t ell, std::mt19937_64& rng) {
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < j.states.size(); ++i) {
    if (!j.states[i].is_terminal() && prev_x.contains(j.states[i])) pivots.push_back(i);
  }
  if (pivots.empty()) return std::nullopt;
  const std::size_t pivot = pivots[uniform_index(pivots.size(), rng)];

  const PolicyCache::Entry& entry = cache.get(j, model);
  std::vector<ArmStats> arms;
  arms.reserve(entry.actions.size());
  for (const Action& a : entry.actions) arms.push_back(stats.get(node_key(j), action_index(a)));
  const Action a = entry.actions[bandit(entry.policy, arms, model.bandit, false, rng)];

  const Observation seen = apply_action(j.states[pivot], a).actor;
  std::vector<WorldState> next = progress_actor(j.states, a, seen, pivot, ell, rng);
  if (!meets(next, x)) return std::nullopt;
  std::optional<OpponentMasks> prev_opp = j.prev_opp;
  if (!a.is_sense()) prev_opp = opponent_masks(j.states, j.owner);
  return make_limited(std::move(next), j.owner, prev_opp);
}

// The observer acts at step i - 1. A sense only flips the phase; a move
// branches over every executable move whose capture square the opponent
// would see as it did.
std::optional<LimitedStateSet> own_transition(const LimitedStateSet& j, const TrackedStep& prev,
                                              const PossibleStateSet& x, std::size_t ell,
                                              std::mt19937_64& rng) {
  const Action& own = *prev.own_action;
  if (own.is_sense()) {
    std::vector<WorldState> next;
    next.reserve(j.states.size());
    for (const auto& s : j.states) {
      if (!s.is_terminal()) next.push_back(apply_action(s, own).state);
    }
    if (!meets(next, x)) return std::nullopt;
    return make_limited(std::move(next), j.owner, j.prev_opp);
  }

  const Action executed = prev.own_obs.executed.value_or(Action::pass());
  const OptSquare captured = prev.own_obs.capture;
  // Branches that lead into x: members the observer holds possible, under
  // the move that actually executed.
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < j.states.size(); ++i) {
    const WorldState& s = j.states[i];
    if (s.is_terminal() || !prev.states.contains(s)) continue;
    if (capture_square(s, executed) != captured) continue;
    if (x.contains(apply_action(s, executed).state)) hits.push_back(i);
  }
  if (hits.empty()) return std::nullopt;
  const std::size_t hit = hits[uniform_index(hits.size(), rng)];

  std::vector<WorldState> next = progress_other(j.states, executed, captured, hit, ell, rng);
  return make_limited(std::move(next), j.owner, j.prev_opp);
}

}  // namespace

const PolicyCache::Entry& PolicyCache::get(const LimitedStateSet& j, const OpponentModel& model) {
  if (auto it = entries_.find(j.hash); it != entries_.end()) return it->second;
  if (entries_.size() >= limit_) entries_.clear();
  Entry e;
  if (j.states[0].phase() == Phase::kSense) {
    e.actions = prune_senses(j.states);
  } else {
    requestable_actions(j.states[0], &e.actions);
    if (e.actions.empty()) e.actions.push_back(Action::pass());
  }
  const Synopsis s = synopsis(j, j.owner);
  e.policy = model.evaluator->evaluate_one(s, e.actions, model.headset).policy;
  return entries_.emplace(j.hash, std::move(e)).first->second;
}

Draw draw_sample(std::span<const LimitedStateSet> prev, const TrackedStep& prev_step,
                 const PossibleStateSet& x, Color owner, NodeStats& stats,
                 const OpponentModel& model, PolicyCache& cache, int max_rejections,
                 std::size_t ell, std::mt19937_64& rng) {
  Draw d;
  if (!prev.empty()) {
    for (; d.rejections < max_rejections; ++d.rejections) {
      const LimitedStateSet& j = prev[uniform_index(prev.size(), rng)];
      std::optional<LimitedStateSet> next =
          prev_step.own_action
              ? own_transition(j, prev_step, x, ell, rng)
              : opponent_transition(j, prev_step.states, x, stats, model, cache, ell, rng);
      if (next) {
        d.set = std::move(*next);
        return d;
      }
    }
  }
  d.fallback = true;
  d.set = make_limited({x[uniform_index(x.size(), rng)]}, owner);
  return d;
}

BeliefFilter::BeliefFilter(Color self, BeliefConfig cfg, OpponentModel model)
    : self_(self), cfg_(cfg), model_(std::move(model)) {}

void BeliefFilter::reset(const WorldState& initial) {
  steps_.clear();
  cache_.clear();
  fallbacks_ = draws_ = 0;
  StepParticles zero;
  zero.particles.push_back(make_limited({initial}, ~self_));
  zero.seen_size = 1;
  steps_.emplace(0, std::move(zero));
}

std::size_t BeliefFilter::oldest_kept(const Tracker& tracker) const {
  const std::size_t cur = tracker.current_index();
  const std::size_t lo = cur + 1 > cfg_.window_steps ? cur + 1 - cfg_.window_steps : 0;
  return std::max(lo, tracker.first_index());
}

std::size_t BeliefFilter::filter(const Tracker& tracker) {
  const std::size_t lo = oldest_kept(tracker);
  steps_.erase(steps_.begin(), steps_.lower_bound(lo));
  std::size_t removed = 0;
  for (auto& [i, step] : steps_) {
    if (!tracker.holds(i)) continue;
    const PossibleStateSet& x = tracker.step(i).states;
    if (x.size() == step.seen_size) continue;
    step.seen_size = x.size();
    const auto before = step.particles.size();
    std::erase_if(step.particles, [&](const LimitedStateSet& l) { return !meets(l.states, x); });
    removed += before - step.particles.size();
  }
  return removed;
}

std::size_t BeliefFilter::deficit(const Tracker& tracker) const {
  std::size_t total = 0;
  for (std::size_t i = std::max<std::size_t>(oldest_kept(tracker), 1);
       i <= tracker.current_index(); ++i) {
    const auto it = steps_.find(i);
    const std::size_t have = it == steps_.end() ? 0 : it->second.particles.size();
    if (have < cfg_.particles) total += cfg_.particles - have;
  }
  return total;
}

Clock::duration BeliefFilter::budget(const Tracker& tracker) const {
  const auto estimate = std::chrono::duration<double>(draw_seconds_ * deficit(tracker));
  return std::max<Clock::duration>(cfg_.min_budget,
                                   std::chrono::duration_cast<Clock::duration>(estimate));
}

void BeliefFilter::truncate(std::size_t step, std::size_t keep) {
  const auto it = steps_.find(step);
  if (it != steps_.end() && it->second.particles.size() > keep) it->second.particles.resize(keep);
}

std::span<const LimitedStateSet> BeliefFilter::at(std::size_t step) const {
  const auto it = steps_.find(step);
  if (it == steps_.end()) return {};
  return it->second.particles;
}

std::size_t BeliefFilter::repopulate(const Tracker& tracker, NodeStats& stats,
                                     Clock::time_point deadline, std::mt19937_64& rng,
                                     std::size_t max_draws) {
  std::size_t made = 0;
  const std::size_t lo = oldest_kept(tracker);
  for (std::size_t i = std::max<std::size_t>(lo, 1); i <= tracker.current_index(); ++i) {
    const PossibleStateSet& x = tracker.step(i).states;
    auto [it, fresh] = steps_.try_emplace(i);
    if (fresh) it->second.seen_size = x.size();
    auto& particles = it->second.particles;
    if (particles.size() >= cfg_.particles) continue;
    const auto prev_it = i > lo ? steps_.find(i - 1) : steps_.end();
    std::span<const LimitedStateSet> prev;
    if (prev_it != steps_.end()) prev = prev_it->second.particles;
    const TrackedStep& prev_step = tracker.step(std::max(i - 1, tracker.first_index()));
    while (particles.size() < cfg_.particles) {
      if (made >= max_draws || Clock::now() >= deadline) return made;
      const auto start = Clock::now();
      Draw d = draw_sample(prev, prev_step, x, ~self_, stats, model_, cache_, cfg_.max_rejections,
                           cfg_.ell, rng);
      const double took = std::chrono::duration<double>(Clock::now() - start).count();
      draw_seconds_ = 0.9 * draw_seconds_ + 0.1 * took;
      fallbacks_ += d.fallback;
      particles.push_back(std::move(d.set));
      ++made;
      ++draws_;
    }
  }
  return made;
}

}  // namespace penumbral
