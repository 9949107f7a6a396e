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

#include "penumbral/eval/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace penumbral {

HeadsetId select_headset(std::string_view opponent, std::span<const HeadsetId> registry) {
  if (!opponent.empty()) {
    for (const auto& h : registry) {
      if (h.name == opponent) return h;
    }
  }
  for (const auto& h : registry) {
    if (h.name == kTopHeadset) return h;
  }
  return {kTopHeadset, ""};
}

EvalOutput Evaluator::evaluate_one(const Synopsis& s, std::span<const Action> actions,
                                   const HeadsetId& headset) const {
  EvalInput in{&s, actions};
  EvalOutput out;
  evaluate(std::span(&in, 1), headset, std::span(&out, 1));
  return out;
}

void softmax_in_place(std::span<float> logits) {
  if (logits.empty()) return;
  const float top = *std::max_element(logits.begin(), logits.end());
  double total = 0;
  for (float& v : logits) {
    v = std::exp(v - top);
    total += v;
  }
  for (float& v : logits) v = static_cast<float>(v / total);
}

namespace {

constexpr float kPieceValue[kNumPieceKinds] = {1, 3, 3, 5, 9, 0};

// A plane in board coordinates rather than the perspective frame.
Bitboard absolute(const Synopsis& s, int p) {
  return s.perspective == Color::kBlack ? flip_vertical(s.planes[p]) : s.planes[p];
}

}  // namespace

float HeuristicEvaluator::material_balance(const Synopsis& s) {
  float own = 0, opp = 0;
  for (int k = 0; k < kNumPieceKinds; ++k) {
    own += kPieceValue[k] * static_cast<float>(popcount(s.planes[plane::kOwnPawns + k]));
    const Bitboard definite = s.planes[plane::kDefOppPawns + k];
    const Bitboard possible = s.planes[plane::kPossOppPawns + k] & ~definite;
    opp += kPieceValue[k] *
           (static_cast<float>(popcount(definite)) + 0.5f * static_cast<float>(popcount(possible)));
  }
  return own - opp;
}

std::vector<HeadsetId> HeuristicEvaluator::headsets() const {
  return {{kTopHeadset, "heuristic"}, {kAllHeadset, "heuristic"}};
}

void HeuristicEvaluator::evaluate(std::span<const EvalInput> batch, const HeadsetId&,
                                  std::span<EvalOutput> out) const {
  if (out.size() < batch.size()) throw std::invalid_argument("output span shorter than batch");
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Synopsis& s = *batch[i].synopsis;
    const Bitboard king = absolute(s, plane::kDefOppPawns + index_of(PieceKind::kKing));
    EvalOutput& o = out[i];
    o.policy.assign(batch[i].actions.size(), 1.0f);
    double total = 0;
    for (std::size_t j = 0; j < batch[i].actions.size(); ++j) {
      const Action& a = batch[i].actions[j];
      if (a.is_move() && (king & a.to.bb())) o.policy[j] = kKingCaptureBoost;
      total += o.policy[j];
    }
    for (float& p : o.policy) p = static_cast<float>(p / total);
    o.value = std::tanh(material_balance(s) / 10.0f);
    o.aux.reset();
  }
}

}  // namespace penumbral
