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

#include "penumbral/search/node_stats.hpp"

#include <algorithm>
#include <bit>

#include "penumbral/core/zobrist.hpp"

namespace penumbral {

NodeStats::NodeStats(std::size_t capacity)
    : slots_(std::bit_ceil(std::max<std::size_t>(capacity, 1))) {}

std::size_t NodeStats::slot_of(std::uint64_t node, int action) const {
  const std::uint64_t h = mix64(node ^ (static_cast<std::uint64_t>(action) * 0x9E3779B97F4A7C15ULL));
  return static_cast<std::size_t>(h & (slots_.size() - 1));
}

ArmStats NodeStats::get(std::uint64_t node, int action) const {
  const Slot& s = slots_[slot_of(node, action)];
  if (s.action == action && s.node == node) return s.stats;
  return {};
}

ArmStats& NodeStats::at(std::uint64_t node, int action) {
  Slot& s = slots_[slot_of(node, action)];
  if (s.action != action || s.node != node) {
    if (s.action < 0) ++occupied_;
    s = {node, action, {}};
  }
  return s.stats;
}

void NodeStats::add_visits(std::uint64_t node, int action, double visits) {
  at(node, action).n += visits;
}

void NodeStats::backup(std::uint64_t node, int action, double value, double visits) {
  ArmStats& a = at(node, action);
  a.n += visits;
  a.q += value;
  a.m = std::min(a.m, value);
}

void NodeStats::clear() {
  std::fill(slots_.begin(), slots_.end(), Slot{});
  occupied_ = 0;
}

}  // namespace penumbral
