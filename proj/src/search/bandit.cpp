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

#include "penumbral/search/bandit.hpp"

#include <cmath>
#include <stdexcept>

namespace penumbral {

double bandit_score(double prior, const ArmStats& arm, double total, double phi,
                    const BanditConfig& cfg) {
  // Visits that are all still virtual have no minimum yet; use the mean.
  const double low = std::isfinite(arm.m) ? arm.m : arm.q / arm.n;
  if (cfg.kind == BanditKind::kUcb1) {
    const double explore = cfg.c * prior * std::sqrt(std::log(total) / arm.n);
    return (1 - phi) * arm.q / arm.n + phi * low + explore;
  }
  const double explore = cfg.c * prior * std::sqrt(total) / (1 + arm.n);
  return (1 - phi) * arm.q / (1 + arm.n) + phi * low + explore;
}

std::size_t bandit_argmax(std::span<const float> prior, std::span<const ArmStats> arms,
                          const BanditConfig& cfg, bool is_root) {
  if (arms.empty() || prior.size() != arms.size()) {
    throw std::invalid_argument("bandit needs one prior per arm and at least one arm");
  }
  std::size_t best = arms.size();
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].n <= 0 && (best == arms.size() || prior[i] > prior[best])) best = i;
  }
  if (best != arms.size()) return best;
  double total = 0;
  for (const auto& a : arms) total += a.n;
  const double phi = is_root && cfg.root_exempt_paranoia ? 0.0 : cfg.phi;
  double best_score = -std::numeric_limits<double>::infinity();
  best = 0;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const double s = bandit_score(prior[i], arms[i], total, phi, cfg);
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

std::size_t sample_prior(std::span<const float> prior, std::mt19937_64& rng) {
  double total = 0;
  for (float p : prior) total += p;
  double u = std::uniform_real_distribution<double>(0, total)(rng);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    u -= prior[i];
    if (u < 0) return i;
  }
  for (std::size_t i = prior.size(); i-- > 0;) {
    if (prior[i] > 0) return i;
  }
  return 0;
}

std::size_t bandit(std::span<const float> prior, std::span<const ArmStats> arms,
                   const BanditConfig& cfg, bool is_root, std::mt19937_64& rng) {
  if (arms.empty() || prior.size() != arms.size()) {
    throw std::invalid_argument("bandit needs one prior per arm and at least one arm");
  }
  if (arms.size() == 1) return 0;
  if (!is_root && cfg.m != kInfiniteMixing) {
    double total = 0;
    for (const auto& a : arms) total += a.n;
    const double mix = std::exp(-cfg.m * total);
    if (std::uniform_real_distribution<double>(0, 1)(rng) < mix) return sample_prior(prior, rng);
  }
  return bandit_argmax(prior, arms, cfg, is_root);
}

}  // namespace penumbral
