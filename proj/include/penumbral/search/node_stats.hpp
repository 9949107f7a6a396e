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
#include <cstdint>
#include <limits>
#include <vector>

namespace penumbral {

struct ArmStats {
  double n = 0;  // visits, including pending virtual loss
  double q = 0;  // value total
  double m = std::numeric_limits<double>::infinity();  // smallest value backed up
};

// Direct-mapped table keyed by (limited set hash, action index). A new key
// landing on an occupied slot replaces the older entry.
class NodeStats {
 public:
  static constexpr std::size_t kDefaultCapacity = std::size_t{1} << 22;

  // capacity is rounded up to a power of two.
  explicit NodeStats(std::size_t capacity = kDefaultCapacity);

  // Zero stats when absent or overwritten.
  ArmStats get(std::uint64_t node, int action) const;
  // Creates the entry if needed.
  ArmStats& at(std::uint64_t node, int action);

  void add_visits(std::uint64_t node, int action, double visits);
  // Adds value and visits and lowers the minimum.
  void backup(std::uint64_t node, int action, double value, double visits);

  std::size_t capacity() const { return slots_.size(); }
  std::size_t occupied() const { return occupied_; }
  void clear();

 private:
  struct Slot {
    std::uint64_t node = 0;
    std::int32_t action = -1;
    ArmStats stats;
  };
  std::size_t slot_of(std::uint64_t node, int action) const;

  std::vector<Slot> slots_;
  std::size_t occupied_ = 0;
};

}  // namespace penumbral
