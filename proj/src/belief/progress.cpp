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

#include "penumbral/belief/progress.hpp"

#include <algorithm>

#include "absl/container/flat_hash_set.h"
#include "penumbral/track/limited_set.hpp"

namespace penumbral {

std::vector<WorldState> dedup_limit(std::vector<WorldState> states, std::size_t keep,
                                    std::size_t ell, std::mt19937_64& rng) {
  absl::flat_hash_set<WorldState, WorldStateHash> seen;
  std::vector<WorldState> unique;
  unique.reserve(states.size());
  std::size_t keep_at = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const bool fresh = seen.insert(states[i]).second;
    if (i == keep) {
      keep_at = fresh ? unique.size()
                      : static_cast<std::size_t>(std::find(unique.begin(), unique.end(), states[i]) -
                                                 unique.begin());
    }
    if (fresh) unique.push_back(states[i]);
  }
  if (unique.size() <= ell) return unique;
  return subsample(unique, ell, keep_at, rng);
}

std::vector<WorldState> progress_actor(std::span<const WorldState> members, const Action& a,
                                       const Observation& seen, std::size_t keep, std::size_t ell,
                                       std::mt19937_64& rng) {
  std::vector<WorldState> next;
  next.reserve(members.size());
  std::size_t keep_at = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].is_terminal()) continue;
    Step step = apply_action(members[i], a);
    if (i != keep && step.actor != seen) continue;
    if (i == keep) keep_at = next.size();
    next.push_back(step.state);
  }
  return dedup_limit(std::move(next), keep_at, ell, rng);
}

std::vector<WorldState> progress_other(std::span<const WorldState> members, const Action& executed,
                                       OptSquare captured, std::size_t keep, std::size_t ell,
                                       std::mt19937_64& rng) {
  if (executed.is_sense()) {
    std::vector<WorldState> next;
    next.reserve(members.size());
    std::size_t keep_at = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i].is_terminal()) continue;
      if (i == keep) keep_at = next.size();
      next.push_back(apply_action(members[i], executed).state);
    }
    return dedup_limit(std::move(next), keep_at, ell, rng);
  }
  std::vector<std::pair<std::uint32_t, Action>> branches;
  std::vector<Action> moves;
  std::optional<std::size_t> must;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const WorldState& s = members[i];
    if (s.is_terminal()) continue;
    legal_actions(s, &moves);
    for (const Action& b : moves) {
      if (capture_square(s, b) != captured) continue;
      if (i == keep && b == executed) must = branches.size();
      branches.emplace_back(static_cast<std::uint32_t>(i), b);
    }
  }
  if (!must) {
    must = branches.size();
    branches.emplace_back(static_cast<std::uint32_t>(keep), executed);
  }
  const std::vector<std::size_t> picked = sample_indices(branches.size(), ell, must, rng);
  std::vector<WorldState> next;
  next.reserve(picked.size());
  std::size_t keep_at = 0;
  for (std::size_t k : picked) {
    if (k == *must) keep_at = next.size();
    next.push_back(apply_action(members[branches[k].first], branches[k].second).state);
  }
  return dedup_limit(std::move(next), keep_at, ell, rng);
}

}  // namespace penumbral
