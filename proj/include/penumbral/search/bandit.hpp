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
#include <limits>
#include <random>
#include <span>

#include "penumbral/search/node_stats.hpp"

namespace penumbral {

enum class BanditKind { kUcb1, kAvop };

struct BanditConfig {
  double c = 2.0;  // exploration constant
  // Mixing constant: the policy is sampled directly with probability
  // exp(-m * total visits). Infinity never samples, 0 always does off the root.
  double m = 1.0;
  double phi = 0.0;  // paranoia: weight of the smallest observed value
  BanditKind kind = BanditKind::kUcb1;
  bool root_exempt_paranoia = false;
};

inline constexpr double kInfiniteMixing = std::numeric_limits<double>::infinity();

// Score of one visited arm under the deterministic rule. total is the sum of
// visits over all arms of the node.
double bandit_score(double prior, const ArmStats& arm, double total, double phi,
                    const BanditConfig& cfg);

// Index of the chosen arm. Unvisited arms come first, highest prior first;
// remaining ties go to the lowest index. Throws std::invalid_argument when
// there are no arms or the spans differ in length.
std::size_t bandit(std::span<const float> prior, std::span<const ArmStats> arms,
                   const BanditConfig& cfg, bool is_root, std::mt19937_64& rng);

// The deterministic branch alone.
std::size_t bandit_argmax(std::span<const float> prior, std::span<const ArmStats> arms,
                          const BanditConfig& cfg, bool is_root);

// Samples an index with probability proportional to prior.
std::size_t sample_prior(std::span<const float> prior, std::mt19937_64& rng);

}  // namespace penumbral
