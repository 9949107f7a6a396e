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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "penumbral/core/state.hpp"
#include "penumbral/track/limited_set.hpp"

namespace penumbral {

inline constexpr int kNumPlanes = 104;

// 104 binary planes describing a limited state set from one player's side.
// Boards are turned so that the perspective player's first rank is rank 1.
struct Synopsis {
  std::array<Bitboard, kNumPlanes> planes{};
  Color perspective = Color::kWhite;

  friend bool operator==(const Synopsis&, const Synopsis&) = default;
};

namespace plane {
inline constexpr int kEast = 0;
inline constexpr int kWest = 1;
inline constexpr int kSouth = 2;
inline constexpr int kNorth = 3;
inline constexpr int kRank1 = 4;
inline constexpr int kRank8 = 5;
inline constexpr int kFileA = 6;
inline constexpr int kFileH = 7;
inline constexpr int kDark = 8;
inline constexpr int kLight = 9;
inline constexpr int kStage = 10;
inline constexpr int kNotOwn = 11;
inline constexpr int kOwnPawns = 12;  // 12..17 own P N B R Q K
inline constexpr int kDefNotOpp = 18;
inline constexpr int kDefOppPawns = 19;  // 19..24
inline constexpr int kPossNotOpp = 25;
inline constexpr int kPossOppPawns = 26;  // 26..31
inline constexpr int kLastFrom = 32;
inline constexpr int kLastTo = 33;
inline constexpr int kLastOwnCapture = 34;
inline constexpr int kLastOppCapture = 35;
inline constexpr int kKnownSquares = 68;
inline constexpr int kAllOwn = 79;
inline constexpr int kDefEmpty = 80;
inline constexpr int kPrevDefNotOpp = 86;
inline constexpr int kPrevLastFrom = 100;
}  // namespace plane

// Feature names, indexed by plane.
const std::array<const char*, kNumPlanes>& plane_names();

// (definitely, possibly) plane pairs over the same predicate.
std::span<const std::pair<int, int>> and_or_pairs();

Synopsis synopsis(const LimitedStateSet& l, Color perspective);
Synopsis synopsis(std::span<const WorldState> states, Color perspective,
                  const std::optional<OpponentMasks>& prev_opp);

// The constant planes 0..9 as they appear in every synopsis.
std::array<Bitboard, 10> constant_planes();

// Binary dump consumed by the trainer: "PNBS1", 104 little-endian u64
// planes, perspective byte (0 white, 1 black), u16 action index, i8 value
// label (+1 win, -1 loss, 0 unknown).
struct SynopsisRecord {
  Synopsis synopsis;
  std::uint16_t action = 0;
  std::int8_t value = 0;
};
inline constexpr std::size_t kSynopsisRecordBytes = 5 + kNumPlanes * 8 + 1 + 2 + 1;
void write_synopsis_record(std::ostream& out, const SynopsisRecord& r);
std::optional<SynopsisRecord> read_synopsis_record(std::istream& in);

}  // namespace penumbral
