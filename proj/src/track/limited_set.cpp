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

#include "penumbral/track/limited_set.hpp"

#include <algorithm>

#include "absl/container/flat_hash_set.h"
#include "penumbral/core/zobrist.hpp"

namespace penumbral {

OpponentMasks opponent_masks(std::span<const WorldState> states, Color owner) {
  OpponentMasks m{};
  for (int i = 0; i < 7; ++i) m[i] = ~Bitboard{0};
  const Color them = ~owner;
  for (const auto& s : states) {
    const Bitboard not_opp = ~s.pieces(them);
    m[0] &= not_opp;
    m[7] |= not_opp;
    for (int k = 0; k < kNumPieceKinds; ++k) {
      const Bitboard b = s.pieces(them, static_cast<PieceKind>(k));
      m[1 + k] &= b;
      m[8 + k] |= b;
    }
  }
  return m;
}

bool LimitedStateSet::contains(const WorldState& s) const { return find(s) != nullptr; }

const WorldState* LimitedStateSet::find(const WorldState& s) const {
  for (const auto& x : states) {
    if (x == s) return &x;
  }
  return nullptr;
}

void LimitedStateSet::rehash() { hash = set_hash(states); }

LimitedStateSet make_limited(std::vector<WorldState> states, Color owner,
                             std::optional<OpponentMasks> prev_opp) {
  LimitedStateSet out;
  out.states = std::move(states);
  out.owner = owner;
  out.prev_opp = prev_opp;
  out.rehash();
  return out;
}

std::uint64_t set_hash_finish(std::uint64_t folded, std::size_t count) {
  return mix64(folded + count * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t set_hash(std::span<const WorldState> states) {
  if (states.empty()) return set_hash_finish(0, 0);
  std::vector<std::uint64_t> hashes;
  hashes.reserve(states.size());
  for (const auto& s : states) hashes.push_back(s.hash());
  std::sort(hashes.begin(), hashes.end());
  std::uint64_t acc = hashes[0];
  for (std::size_t i = 1; i < hashes.size(); ++i) acc = mix64(acc) ^ hashes[i];
  return set_hash_finish(acc, hashes.size());
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t l,
                                        std::optional<std::size_t> must, std::mt19937_64& rng) {
  std::vector<std::size_t> out;
  if (l >= n) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  if (l == 0) return out;
  // Floyd's algorithm over [0, n) without `must`, then `must` added back.
  absl::flat_hash_set<std::size_t> chosen;
  const std::size_t pool = must ? n - 1 : n;
  const std::size_t want = must ? l - 1 : l;
  for (std::size_t j = pool - want; j < pool; ++j) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    chosen.insert(chosen.contains(t) ? j : t);
  }
  out.reserve(l);
  for (std::size_t v : chosen) out.push_back(must && v >= *must ? v + 1 : v);
  if (must) out.push_back(*must);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WorldState> subsample(std::span<const WorldState> states, std::size_t l,
                                  std::optional<std::size_t> must_include, std::mt19937_64& rng) {
  std::vector<WorldState> out;
  const auto picks = sample_indices(states.size(), l, must_include, rng);
  out.reserve(picks.size());
  for (std::size_t i : picks) out.push_back(states[i]);
  return out;
}

}  // namespace penumbral
