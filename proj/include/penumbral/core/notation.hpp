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

#include <optional>
#include <string>
#include <string_view>

#include "penumbral/core/state.hpp"

namespace penumbral {

// One-line text form of a state:
//   <board>/<side> <s|m> <castling> <ep> <lastfrom> <lastto> <capself> <capopp> [key=value...]
// The four last-move fields are read from the side to act: its own last
// move, the square it captured on, and the square the opponent captured on.
// Optional trailing tokens carry the remaining metadata so that parsing the
// output reproduces the state exactly:
//   ofrom= oto= (opponent's last move), pfrom= pto= pcap= (side to act, the
//   move before), opfrom= opto= opcap= (opponent, the move before), ht=.
std::string to_text(const WorldState& s);
std::optional<WorldState> parse_state(std::string_view text);

// Piece placement field only, in FEN order.
std::string board_fen(const WorldState& s);

}  // namespace penumbral
