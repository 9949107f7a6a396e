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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "penumbral/core/action.hpp"
#include "penumbral/track/synopsis.hpp"

namespace penumbral {

struct HeadsetId {
  std::string name;
  std::string trained_on;

  friend bool operator==(const HeadsetId&, const HeadsetId&) = default;
};

inline const std::string kTopHeadset = "Top";
inline const std::string kAllHeadset = "All";

// Exact name match, otherwise Top.
HeadsetId select_headset(std::string_view opponent, std::span<const HeadsetId> registry);

struct EvalInput {
  const Synopsis* synopsis = nullptr;
  // Candidate actions of the player to act; the policy is returned over these.
  std::span<const Action> actions;
};

struct AuxOutput {
  float soon_win = 0;
  float soon_lose = 0;
  std::array<float, 12> piece_counts{};
};

struct EvalOutput {
  // Probability per entry of EvalInput::actions; sums to 1.
  std::vector<float> policy;
  // In [-1, 1], from the point of view of the player to act.
  float value = 0;
  std::optional<AuxOutput> aux;
};

// Supplies the policy of one headset and the value of the All headset.
// Implementations are immutable after construction and safe to share.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual std::string name() const = 0;
  virtual std::vector<HeadsetId> headsets() const = 0;
  virtual void evaluate(std::span<const EvalInput> batch, const HeadsetId& headset,
                        std::span<EvalOutput> out) const = 0;

  EvalOutput evaluate_one(const Synopsis& s, std::span<const Action> actions,
                          const HeadsetId& headset) const;
};

// Material balance and a near-uniform policy that strongly prefers moves
// onto a square where the opposing king definitely stands.
class HeuristicEvaluator final : public Evaluator {
 public:
  static constexpr float kKingCaptureBoost = 1000.0f;

  std::string name() const override { return "heuristic"; }
  std::vector<HeadsetId> headsets() const override;
  void evaluate(std::span<const EvalInput> batch, const HeadsetId& headset,
                std::span<EvalOutput> out) const override;

  // Expected own minus expected opposing material, in pawns.
  static float material_balance(const Synopsis& s);
};

// Normalizes `logits` over the given count into probabilities in place.
void softmax_in_place(std::span<float> logits);

}  // namespace penumbral
