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

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

#include "penumbral/core/rules.hpp"
#include "penumbral/eval/network.hpp"
#include "penumbral/harness/agent.hpp"
#include "penumbral/search/analysis.hpp"
#include "penumbral/track/tracker.hpp"

namespace penumbral {
namespace {

constexpr std::array<std::pair<AgentKind, std::string_view>, 8> kKindNames{{
    {AgentKind::kDsmcpMixture, "DsmcpMixture"},
    {AgentKind::kDsmcpTree, "DsmcpTree"},
    {AgentKind::kDsmcpCache, "DsmcpCache"},
    {AgentKind::kNetworkOnly, "NetworkOnly"},
    {AgentKind::kDsmcpSimple, "DsmcpSimple"},
    {AgentKind::kRandomBot, "RandomBot"},
    {AgentKind::kAttackerBot, "AttackerBot"},
    {AgentKind::kMaterialBot, "MaterialBot"},
}};

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

Action random_sense(std::mt19937_64& rng) {
  return Action::sense(Square(std::uniform_int_distribution<int>(0, 63)(rng)));
}

Action random_move(const OwnView& view, std::mt19937_64& rng) {
  const std::vector<Action> moves = view.requestable();
  return moves.empty() ? Action::pass() : pick(moves, rng);
}

int piece_value(PieceKind k) {
  static constexpr std::array<int, kNumPieceKinds> kValues{1, 3, 3, 5, 9, 1000};
  return kValues[index_of(k)];
}

int chebyshev(Square a, Square b) {
  return std::max(std::abs(a.file() - b.file()), std::abs(a.rank() - b.rank()));
}

// Base for agents that only need their own pieces.
class ViewAgent : public Agent {
 public:
  explicit ViewAgent(std::string name) : name_(std::move(name)), view_(Color::kWhite) {}
  const std::string& name() const override { return name_; }
  void new_game(Color self, std::string_view, std::uint64_t seed) override {
    self_ = self;
    view_ = OwnView(self);
    rng_.seed(seed);
  }
  void observe_own(const Action&, const Observation& obs) override { view_.on_own(obs); }
  void observe_opponent(const Observation& obs) override { view_.on_opponent(obs); }

 protected:
  bool sensing() const { return view_.state().phase() == Phase::kSense; }

  std::string name_;
  Color self_ = Color::kWhite;
  OwnView view_;
  std::mt19937_64 rng_;
};

class RandomBot final : public ViewAgent {
 public:
  using ViewAgent::ViewAgent;
  Action act(Clock::time_point) override {
    return sensing() ? random_sense(rng_) : random_move(view_, rng_);
  }
};

// Senses where it expects the opposing king, takes it when seen, otherwise
// captures what it saw or moves toward the king.
class AttackerBot final : public ViewAgent {
 public:
  using ViewAgent::ViewAgent;

  void new_game(Color self, std::string_view opponent, std::uint64_t seed) override {
    ViewAgent::new_game(self, opponent, seed);
    king_ = Square(4, self == Color::kWhite ? 7 : 0);
    seen_.reset();
  }
  void observe_own(const Action& requested, const Observation& obs) override {
    ViewAgent::observe_own(requested, obs);
    if (!obs.sense) return;
    seen_ = obs.sense;
    for (const auto& [sq, piece] : obs.sense->squares()) {
      if (piece && piece->color != self_ && piece->kind == PieceKind::kKing) king_ = sq;
    }
  }

  Action act(Clock::time_point) override {
    if (sensing()) {
      const int f = std::clamp(king_.file(), 1, 6);
      const int r = std::clamp(king_.rank(), 1, 6);
      return Action::sense(Square(f, r));
    }
    const std::vector<Action> moves = view_.requestable();
    std::vector<Action> best;
    int best_score = std::numeric_limits<int>::min();
    for (const Action& m : moves) {
      if (!m.is_move()) continue;
      int score = 10 * (chebyshev(m.from, king_) - chebyshev(m.to, king_));
      if (m.to == king_) score += 100000;
      if (seen_) {
        if (auto p = seen_->at(m.to); p && p->color != self_) score += 100 * piece_value(p->kind);
      }
      if (score > best_score) {
        best_score = score;
        best.clear();
      }
      if (score == best_score) best.push_back(m);
    }
    seen_.reset();
    return best.empty() ? Action::pass() : pick(best, rng_);
  }

 private:
  Square king_;
  std::optional<SenseResult> seen_;
};

// Tracks possible states, senses among the informative windows, and takes
// the move that captures the most material in one sampled state.
class MaterialBot final : public ViewAgent {
 public:
  MaterialBot(std::string name, const AgentSpec& spec)
      : ViewAgent(std::move(name)),
        config_{.cap = spec.tracker_cap, .window_steps = spec.tracker_window},
        tracker_(Color::kWhite, config_) {}

  void new_game(Color self, std::string_view opponent, std::uint64_t seed) override {
    ViewAgent::new_game(self, opponent, seed);
    tracker_ = Tracker(self, config_);
  }
  void observe_own(const Action& requested, const Observation& obs) override {
    ViewAgent::observe_own(requested, obs);
    tracker_.observe_own(requested, obs);
  }
  void observe_opponent(const Observation& obs) override {
    ViewAgent::observe_opponent(obs);
    tracker_.observe_opponent(obs);
  }
  std::optional<std::size_t> tracked_states() const override {
    if (tracker_.overflowed()) return std::nullopt;
    return tracker_.current().size();
  }

  Action act(Clock::time_point) override {
    if (tracker_.overflowed()) return sensing() ? random_sense(rng_) : random_move(view_, rng_);
    const auto& states = tracker_.current().states();
    if (sensing()) return pick(prune_senses(states), rng_);
    const WorldState& x = pick(states, rng_);
    std::vector<Action> best;
    int best_score = -1;
    for (const Action& m : view_.requestable()) {
      int score = 0;
      if (auto sq = capture_square(x, substitute_move(x, m))) {
        score = piece_value(x.piece_at(*sq)->kind);
      }
      if (score > best_score) {
        best_score = score;
        best.clear();
      }
      if (score == best_score) best.push_back(m);
    }
    return best.empty() ? Action::pass() : pick(best, rng_);
  }

 private:
  Tracker::Config config_;
  Tracker tracker_;
};

// Tracks X, keeps opponent-perspective particles, and plans over both.
class DsmcpAgent final : public Agent {
 public:
  explicit DsmcpAgent(const AgentSpec& spec)
      : spec_(spec),
        evaluator_(make_evaluator(spec.weights)),
        view_(Color::kWhite),
        tracker_(Color::kWhite, tracker_config()),
        belief_(Color::kBlack, spec.belief, model()),
        stats_(spec.table_capacity) {}

  const std::string& name() const override { return spec_.name; }

  void new_game(Color self, std::string_view opponent, std::uint64_t seed) override {
    self_ = self;
    rng_.seed(seed);
    view_ = OwnView(self);
    tracker_ = Tracker(self, tracker_config());
    OpponentModel m = model();
    m.headset = select_headset(opponent, evaluator_->headsets());
    opponent_headset_ = m.headset;
    belief_ = BeliefFilter(self, spec_.belief, std::move(m));
    belief_.reset(WorldState::initial());
    stats_.clear();
    random_ = false;
    wait_cap_ = spec_.belief.min_budget;
  }

  void observe_own(const Action& requested, const Observation& obs) override {
    view_.on_own(obs);
    if (!random_) tracker_.observe_own(requested, obs);
    after_observation();
  }
  void observe_opponent(const Observation& obs) override {
    view_.on_opponent(obs);
    if (!random_) tracker_.observe_opponent(obs);
    after_observation();
  }

  std::optional<std::size_t> tracked_states() const override {
    if (random_) return std::nullopt;
    return tracker_.current().size();
  }

  Action act(Clock::time_point deadline) override {
    if (random_) {
      return view_.state().phase() == Phase::kSense ? random_sense(rng_) : random_move(view_, rng_);
    }
    // Fill the current step before planning, with at most half the time.
    const auto now = Clock::now();
    wait_cap_ = std::max<Clock::duration>(spec_.belief.min_budget, deadline - now);
    belief_.repopulate(tracker_, stats_, now + (deadline - now) / 2, rng_);
    PlanContext ctx;
    ctx.self = self_;
    ctx.belief = belief_.at(tracker_.current_index());
    ctx.states = &tracker_.current();
    ctx.prev_opp = tracker_.prev_opp();
    ctx.stats = &stats_;
    ctx.evaluator = evaluator_.get();
    ctx.opponent_headset = opponent_headset_;
    return choose_action(ctx, spec_.planner, deadline, rng_).action;
  }

 private:
  Tracker::Config tracker_config() const {
    return {.cap = spec_.tracker_cap, .window_steps = spec_.tracker_window};
  }
  OpponentModel model() const {
    OpponentModel m;
    m.evaluator = evaluator_;
    m.bandit = spec_.planner.bandit;
    return m;
  }

  void after_observation() {
    if (random_) return;
    if (tracker_.overflowed()) {
      random_ = true;
      return;
    }
    belief_.filter(tracker_);
    // While the opponent acts, spend its turn refilling particles. The games
    // run one player at a time, so the wait is capped at the agent's own
    // latest action budget.
    if (view_.state().side() != self_) {
      const auto wait = std::min<Clock::duration>(belief_.budget(tracker_), wait_cap_);
      belief_.repopulate(tracker_, stats_, Clock::now() + wait, rng_);
    }
  }

  AgentSpec spec_;
  std::shared_ptr<const Evaluator> evaluator_;
  Color self_ = Color::kWhite;
  OwnView view_;
  Tracker tracker_;
  BeliefFilter belief_;
  NodeStats stats_;
  HeadsetId opponent_headset_{kTopHeadset, ""};
  std::mt19937_64 rng_;
  bool random_ = false;
  Clock::duration wait_cap_{};
};

}  // namespace

std::string_view to_string(AgentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<AgentKind> parse_agent_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

bool is_dsmcp(AgentKind kind) {
  switch (kind) {
    case AgentKind::kDsmcpMixture:
    case AgentKind::kDsmcpTree:
    case AgentKind::kDsmcpCache:
    case AgentKind::kNetworkOnly:
    case AgentKind::kDsmcpSimple: return true;
    default: return false;
  }
}

AgentSpec default_spec(AgentKind kind) {
  AgentSpec s;
  s.kind = kind;
  s.name = std::string(to_string(kind));
  switch (kind) {
    case AgentKind::kDsmcpMixture: s.planner.bandit.m = 1; break;
    case AgentKind::kDsmcpTree: s.planner.bandit.m = kInfiniteMixing; break;
    case AgentKind::kDsmcpCache: s.planner.bandit.m = 0; break;
    case AgentKind::kNetworkOnly: s.planner.search = false; break;
    case AgentKind::kDsmcpSimple: s.planner.static_analysis = false; break;
    default: break;
  }
  return s;
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec) {
  AgentSpec s = spec;
  if (s.name.empty()) s.name = std::string(to_string(s.kind));
  switch (s.kind) {
    case AgentKind::kRandomBot: return std::make_unique<RandomBot>(s.name);
    case AgentKind::kAttackerBot: return std::make_unique<AttackerBot>(s.name);
    case AgentKind::kMaterialBot: return std::make_unique<MaterialBot>(s.name, s);
    default: return std::make_unique<DsmcpAgent>(s);
  }
}

}  // namespace penumbral
