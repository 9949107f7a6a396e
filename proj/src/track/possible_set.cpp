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

#include "penumbral/track/possible_set.hpp"

namespace penumbral {

PossibleStateSet::PossibleStateSet(std::size_t cap)
    : states_(std::make_unique<std::vector<WorldState>>()),
      index_(0, IndexHash{states_.get()}, IndexEq{states_.get()}),
      cap_(cap) {}

PossibleStateSet::PossibleStateSet(const PossibleStateSet& other)
    : PossibleStateSet(other.cap_) {
  overflowed_ = other.overflowed_;
  rebuild(*other.states_);
}

PossibleStateSet& PossibleStateSet::operator=(const PossibleStateSet& other) {
  if (this != &other) {
    PossibleStateSet copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void PossibleStateSet::reserve(std::size_t n) {
  states_->reserve(n);
  index_.reserve(n);
}

bool PossibleStateSet::insert(const WorldState& s) {
  if (index_.find(s) != index_.end()) return false;
  if (states_->size() >= cap_) {
    overflowed_ = true;
    return false;
  }
  states_->push_back(s);
  index_.insert(static_cast<std::uint32_t>(states_->size() - 1));
  return true;
}

const WorldState* PossibleStateSet::find(const WorldState& s) const {
  const auto it = index_.find(s);
  return it == index_.end() ? nullptr : &(*states_)[*it];
}

void PossibleStateSet::rebuild(std::vector<WorldState> states) {
  *states_ = std::move(states);
  index_.clear();
  index_.reserve(states_->size());
  for (std::uint32_t i = 0; i < states_->size(); ++i) index_.insert(i);
}

}  // namespace penumbral
