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
#include <random>
#include <span>
#include <vector>

#include "penumbral/core/rules.hpp"

namespace penumbral {

// Successors of a limited set from the acting player's side: every member
// on which `a` gives the actor the observation `seen`. The successor of
// members[keep] is always kept; the result is deduplicated and holds at
// most ell states.
std::vector<WorldState> progress_actor(std::span<const WorldState> members, const Action& a,
                                       const Observation& seen, std::size_t keep, std::size_t ell,
                                       std::mt19937_64& rng);

// Successors from the side of the player who did not act. A sense only
// flips the phase. For a move the members branch over every executable
// move whose capture square is `captured`; `executed` applied to
// members[keep] is always kept. At most ell states, sampled uniformly over
// the branches.
std::vector<WorldState> progress_other(std::span<const WorldState> members, const Action& executed,
                                       OptSquare captured, std::size_t keep, std::size_t ell,
                                       std::mt19937_64& rng);

// Deduplicates `states` and keeps at most ell of them, states[keep] among them.
std::vector<WorldState> dedup_limit(std::vector<WorldState> states, std::size_t keep,
                                    std::size_t ell, std::mt19937_64& rng);

}  // namespace penumbral
