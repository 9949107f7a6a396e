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
#include <cstdint>
#include <memory>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "penumbral/core/state.hpp"

namespace penumbral {

// Deduplicated world states in insertion order. Lookups go through the
// Zobrist hash and then full equality, so colliding distinct states are
// both kept. Stops accepting states once `cap` is reached and remembers it.
class PossibleStateSet {
 public:
  static constexpr std::size_t kDefaultCap = 9'000'000;

  explicit PossibleStateSet(std::size_t cap = kDefaultCap);
  PossibleStateSet(const PossibleStateSet& other);
  PossibleStateSet& operator=(const PossibleStateSet& other);
  PossibleStateSet(PossibleStateSet&&) noexcept = default;
  PossibleStateSet& operator=(PossibleStateSet&&) noexcept = default;

  // False when an equal state is already present or the cap was hit.
  bool insert(const WorldState& s);
  const WorldState* find(const WorldState& s) const;
  bool contains(const WorldState& s) const { return find(s) != nullptr; }

  // Keeps the states for which keep(state) is true. Returns the number removed.
  template <typename Pred>
  std::size_t retain(Pred keep) {
    std::vector<WorldState> kept;
    kept.reserve(states_->size());
    for (const auto& s : *states_) {
      if (keep(s)) kept.push_back(s);
    }
    const std::size_t removed = states_->size() - kept.size();
    if (removed) rebuild(std::move(kept));
    return removed;
  }

  std::size_t size() const { return states_->size(); }
  bool empty() const { return states_->empty(); }
  std::size_t cap() const { return cap_; }
  bool overflowed() const { return overflowed_; }
  void reserve(std::size_t n);

  const std::vector<WorldState>& states() const { return *states_; }
  const WorldState& operator[](std::size_t i) const { return (*states_)[i]; }
  auto begin() const { return states_->begin(); }
  auto end() const { return states_->end(); }

 private:
  struct IndexHash {
    using is_transparent = void;
    const std::vector<WorldState>* states;
    std::size_t operator()(std::uint32_t i) const { return (*states)[i].hash(); }
    std::size_t operator()(const WorldState& s) const { return s.hash(); }
  };
  struct IndexEq {
    using is_transparent = void;
    const std::vector<WorldState>* states;
    bool operator()(std::uint32_t a, std::uint32_t b) const { return a == b; }
    bool operator()(std::uint32_t a, const WorldState& b) const { return (*states)[a] == b; }
    bool operator()(const WorldState& a, std::uint32_t b) const { return a == (*states)[b]; }
  };
  using Index = absl::flat_hash_set<std::uint32_t, IndexHash, IndexEq>;

  void rebuild(std::vector<WorldState> states);

  // Held by pointer so the index functors stay valid when the set moves.
  std::unique_ptr<std::vector<WorldState>> states_;
  Index index_;
  std::size_t cap_;
  bool overflowed_ = false;
};

}  // namespace penumbral
