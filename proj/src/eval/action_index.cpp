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

#include "penumbral/eval/action_index.hpp"

namespace penumbral {

int action_index(const Action& a) {
  switch (a.kind) {
    case ActionKind::kSense:
      return kSenseIndexBase + a.from.index();
    case ActionKind::kPass:
      return kPassIndex;
    case ActionKind::kMove:
      break;
  }
  return a.from.index() * 64 + a.to.index();
}

std::optional<Action> action_from_index(int index, const WorldState& context) {
  if (index < 0 || index > kPassIndex) return std::nullopt;
  if (index == kPassIndex) return Action::pass();
  if (index >= kSenseIndexBase) return Action::sense(Square(index - kSenseIndexBase));
  const Square from(index / 64), to(index % 64);
  std::optional<PieceKind> promotion;
  const Color us = context.side();
  if (context.pieces(us, PieceKind::kPawn) & from.bb()) {
    if (to.rank() == (us == Color::kWhite ? 7 : 0)) promotion = PieceKind::kQueen;
  }
  return Action::move(from, to, promotion);
}

}  // namespace penumbral
