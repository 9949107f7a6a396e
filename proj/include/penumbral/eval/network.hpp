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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "penumbral/eval/evaluator.hpp"

namespace penumbral {

// PNBW1 weight file, all integers and floats little-endian:
//   "PNBW1", u32 tensor count, then per tensor
//   u32 name length, name bytes, u32 rank, rank x u32 dims, float32 data,
//   and finally the CRC32 of every preceding byte.
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  std::size_t elements() const;
};
using TensorMap = std::map<std::string, Tensor>;

class WeightError : public std::runtime_error {
 public:
  enum class Kind { kIo, kFormat, kCrc, kUnknownTensor, kShape, kMissingTensor };
  WeightError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

TensorMap parse_weights(const std::vector<std::uint8_t>& bytes);
TensorMap read_weights(const std::filesystem::path& path);
std::vector<std::uint8_t> serialize_weights(const TensorMap& tensors);
void write_weights(const std::filesystem::path& path, const TensorMap& tensors);

// Residual tower over the 104 synopsis planes with one set of heads per
// headset. Tensor names, with W the width, R the block count and H the
// value hidden size:
//   stem.weight [W,104,3,3]                stem.bias [W]
//   tower.<r>.conv<1|2>.weight [W,W,3,3]   tower.<r>.conv<1|2>.bias [W]
//   head.<h>.policy.weight [65,W]          head.<h>.policy.bias [65]
//   head.<h>.pass.weight [64]              head.<h>.pass.bias [1]
//   head.<h>.value.conv.weight [1,W]       head.<h>.value.conv.bias [1]
//   head.<h>.value.fc1.weight [H,64]       head.<h>.value.fc1.bias [H]
//   head.<h>.value.fc2.weight [1,H]        head.<h>.value.fc2.bias [1]
// and optionally, for k in soon_win, soon_lose (O=1) and piece_count (O=12):
//   head.<h>.<k>.conv.weight [1,W]  head.<h>.<k>.conv.bias [1]
//   head.<h>.<k>.fc.weight [O,64]   head.<h>.<k>.fc.bias [O]
// Batch norm is folded into the convolutions before export.
//
// Squares are in the synopsis frame: for a Black synopsis every action
// square is mirrored vertically before lookup. Policy channel c < 64 at
// square f scores the move f->c, channel 64 at square s scores sensing s,
// and pass scores pass.weight . channel64 + pass.bias.
class NetworkEvaluator final : public Evaluator {
 public:
  explicit NetworkEvaluator(TensorMap tensors);
  static std::unique_ptr<NetworkEvaluator> load(const std::filesystem::path& path);

  std::string name() const override { return "network"; }
  std::vector<HeadsetId> headsets() const override;
  void evaluate(std::span<const EvalInput> batch, const HeadsetId& headset,
                std::span<EvalOutput> out) const override;

  int blocks() const { return blocks_; }
  int width() const { return width_; }

  // All 4225 logits in action-index order (reserved entries are -inf).
  std::vector<float> logits(const Synopsis& s, const HeadsetId& headset) const;

 private:
  struct Conv {
    int out = 0, in = 0, k = 1;
    const float* weight = nullptr;
    const float* bias = nullptr;
  };
  struct Dense {
    int out = 0, in = 0;
    const float* weight = nullptr;
    const float* bias = nullptr;
  };
  struct AuxHead {
    Conv conv;
    Dense fc;
  };
  struct Head {
    Conv policy;
    Dense pass;
    Conv value_conv;
    Dense value_fc1, value_fc2;
    std::optional<AuxHead> soon_win, soon_lose, piece_count;
  };

  void tower(const Synopsis& s, std::vector<float>& features) const;
  std::vector<float> policy_logits(const std::vector<float>& features, const Head& h) const;
  float value(const std::vector<float>& features, const Head& h) const;
  AuxOutput aux(const std::vector<float>& features, const Head& h) const;
  const Head& head(const std::string& name) const;

  TensorMap tensors_;
  int width_ = 0;
  int blocks_ = 0;
  Conv stem_;
  std::vector<std::pair<Conv, Conv>> tower_;
  std::map<std::string, Head> heads_;
};

// Evaluator selected by PENUMBRAL_WEIGHTS or an explicit path; heuristic
// when neither is given.
std::shared_ptr<const Evaluator> make_evaluator(const std::string& weights_path);

}  // namespace penumbral
