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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "penumbral/core/types.hpp"

namespace penumbral {

enum class ActionKind : std::uint8_t { kSense, kMove, kPass };

struct Action {
  ActionKind kind = ActionKind::kPass;
  Square from;  // the sensed square for kSense
  Square to;
  std::optional<PieceKind> promotion;

  static constexpr Action sense(Square s) { return {ActionKind::kSense, s, s, std::nullopt}; }
  static constexpr Action move(Square from, Square to,
                               std::optional<PieceKind> promotion = std::nullopt) {
    return {ActionKind::kMove, from, to, promotion};
  }
  static constexpr Action pass() { return {}; }

  bool is_sense() const { return kind == ActionKind::kSense; }
  bool is_move() const { return kind == ActionKind::kMove; }
  bool is_pass() const { return kind == ActionKind::kPass; }

  friend bool operator==(const Action& a, const Action& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case ActionKind::kPass: return true;
      case ActionKind::kSense: return a.from == b.from;
      case ActionKind::kMove:
        return a.from == b.from && a.to == b.to && a.promotion == b.promotion;
    }
    return false;
  }
};

// "sense:e4", "move:e2e4", "move:e7e8q", "pass".
std::string to_string(const Action& a);
std::optional<Action> parse_action(std::string_view text);

// Ground truth inside a sensed window. Boards are masked to `window`.
struct SenseResult {
  Square center;
  Bitboard window = 0;
  std::array<Bitboard, kNumPieceKinds> kinds{};
  std::array<Bitboard, 2> colors{};

  std::optional<Piece> at(Square s) const;
  // Window squares in ascending index order with their occupants.
  std::vector<std::pair<Square, std::optional<Piece>>> squares() const;

  friend bool operator==(const SenseResult&, const SenseResult&) = default;
};

// What one player learns from one action. The player who did not act sees
// only a capture square, and nothing at all for a sense.
struct Observation {
  std::optional<SenseResult> sense;
  std::optional<Action> executed;
  OptSquare capture;

  friend bool operator==(const Observation&, const Observation&) = default;
};

}  // namespace penumbral
