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

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "penumbral/core/state.hpp"

namespace penumbral {

// What an infostate owner knows about opposing pieces, in board orientation:
// [0] definitely not opposing, [1..6] definitely opposing P..K,
// [7] possibly not opposing, [8..13] possibly opposing P..K.
using OpponentMasks = std::array<Bitboard, 14>;

OpponentMasks opponent_masks(std::span<const WorldState> states, Color owner);

// Up to l world states standing in for one infostate of `owner`.
struct LimitedStateSet {
  std::vector<WorldState> states;
  std::uint64_t hash = 0;
  Color owner = Color::kWhite;
  // Opponent masks as they were when the owner made its previous move.
  std::optional<OpponentMasks> prev_opp;

  std::size_t size() const { return states.size(); }
  bool contains(const WorldState& s) const;
  const WorldState* find(const WorldState& s) const;
  void rehash();
};

LimitedStateSet make_limited(std::vector<WorldState> states, Color owner,
                             std::optional<OpponentMasks> prev_opp = std::nullopt);

// Order-independent combination of member hashes: sorted, folded with a
// 64-bit mixer, then mixed with the member count.
std::uint64_t set_hash(std::span<const WorldState> states);
std::uint64_t set_hash_finish(std::uint64_t folded, std::size_t count);

// Uniform sample without replacement of min(l, |states|) states. When
// `must_include` indexes into `states`, that state is always kept. Output
// follows input order.
std::vector<WorldState> subsample(std::span<const WorldState> states, std::size_t l,
                                  std::optional<std::size_t> must_include, std::mt19937_64& rng);

// Sorted distinct indices: a uniform l-subset of [0, n), containing `must` if given.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t l,
                                        std::optional<std::size_t> must, std::mt19937_64& rng);

}  // namespace penumbral
