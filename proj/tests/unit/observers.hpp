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

#include "penumbral/core/rules.hpp"
#include "penumbral/track/tracker.hpp"

namespace penumbral::testing {

// Feeds each step of a game to both players' trackers.
struct Observers {
  explicit Observers(std::size_t cap = PossibleStateSet::kDefaultCap)
      : white(Color::kWhite, {.cap = cap}), black(Color::kBlack, {.cap = cap}) {}
  bool overflowed() const { return white.overflowed() || black.overflowed(); }

  Tracker white;
  Tracker black;

  void feed(const WorldState& before, const Action& a, const Step& step) {
    Tracker& actor = before.side() == Color::kWhite ? white : black;
    Tracker& other = before.side() == Color::kWhite ? black : white;
    actor.observe_own(a, step.actor);
    other.observe_opponent(step.other);
  }
};

}  // namespace penumbral::testing
