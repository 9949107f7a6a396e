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
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "penumbral/belief/belief.hpp"
#include "penumbral/core/action.hpp"
#include "penumbral/plan/planner.hpp"

namespace penumbral {

enum class AgentKind {
  kDsmcpMixture,
  kDsmcpTree,
  kDsmcpCache,
  kNetworkOnly,
  kDsmcpSimple,
  kRandomBot,
  kAttackerBot,
  kMaterialBot,
};

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent_kind(std::string_view text);
bool is_dsmcp(AgentKind kind);

struct AgentSpec {
  std::string name;  // defaults to the kind name
  AgentKind kind = AgentKind::kRandomBot;
  PlannerConfig planner;
  BeliefConfig belief;
  // Above this many possible states the agent stops tracking and plays randomly.
  std::size_t tracker_cap = 200'000;
  std::size_t tracker_window = 8;
  std::size_t table_capacity = std::size_t{1} << 20;
  std::string weights;  // PNBW1 file; empty for the heuristic evaluator
};

// Parameters of a variant: m = 1, infinity or 0, no search, or no static
// analysis. Everything else keeps the defaults.
AgentSpec default_spec(AgentKind kind);

// One player. Sees only its own observations.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual const std::string& name() const = 0;
  virtual void new_game(Color self, std::string_view opponent, std::uint64_t seed) = 0;
  virtual void observe_own(const Action& requested, const Observation& obs) = 0;
  // What this agent saw of the opponent's action; empty for a sense.
  virtual void observe_opponent(const Observation& obs) = 0;
  // A sense in the sense phase, otherwise a move or Pass.
  virtual Action act(Clock::time_point deadline) = 0;
  // |X| of the agent's own tracking, if it tracks.
  virtual std::optional<std::size_t> tracked_states() const { return std::nullopt; }
};

std::unique_ptr<Agent> make_agent(const AgentSpec& spec);

}  // namespace penumbral
