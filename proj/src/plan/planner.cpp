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

#include "penumbral/plan/planner.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"
#include "penumbral/belief/progress.hpp"
#include "penumbral/core/zobrist.hpp"
#include "penumbral/eval/action_index.hpp"
#include "penumbral/search/analysis.hpp"
#include "penumbral/track/synopsis.hpp"

namespace penumbral {
namespace {

std::size_t uniform_index(std::size_t n, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::size_t index_in(std::span<const WorldState> states, const WorldState& x) {
  return static_cast<std::size_t>(std::find(states.begin(), states.end(), x) - states.begin());
}

std::size_t index_in(const PossibleStateSet& x, const WorldState& s) {
  return static_cast<std::size_t>(x.find(s) - x.states().data());
}

// The side to act can take the opposing king, now or right after sensing.
bool could_win(const WorldState& x) {
  if (x.phase() == Phase::kMove) return king_capture(x).has_value();
  WorldState moving = x;
  moving.set_phase(Phase::kMove);
  return king_capture(moving).has_value();
}

std::vector<Action> candidate_actions(std::span<const WorldState> states) {
  if (states[0].phase() == Phase::kSense) return prune_senses(states);
  std::vector<Action> out = requestable_actions(states[0]);
  if (out.empty()) out.push_back(Action::pass());
  return out;
}

struct PathEntry {
  std::uint64_t key;
  int action;
  Color owner;
};

class Search {
 public:
  Search(const PlanContext& ctx, const PlannerConfig& cfg, std::uint64_t root,
         std::span<const Action> root_actions, std::span<const float> prior, std::mt19937_64& rng,
         std::ostream* trace, PlanResult& result)
      : ctx_(ctx),
        cfg_(cfg),
        root_(root),
        root_actions_(root_actions),
        prior_(prior),
        rng_(rng),
        trace_(trace),
        result_(result) {}

  void playout();

 private:
  void backup(const std::vector<PathEntry>& path, double q, Color owner, double visits) {
    for (const auto& e : path) {
      ctx_.stats->backup(e.key, e.action, e.owner == owner ? q : -q, visits);
    }
  }
  const HeadsetId& headset(Color owner) const {
    return owner == ctx_.self ? ctx_.own_headset : ctx_.opponent_headset;
  }

  const PlanContext& ctx_;
  const PlannerConfig& cfg_;
  std::uint64_t root_;
  std::span<const Action> root_actions_;
  std::span<const float> prior_;
  std::mt19937_64& rng_;
  std::ostream* trace_;
  PlanResult& result_;
  std::vector<ArmStats> arms_;
};

void Search::playout() {
  const PossibleStateSet& xs = *ctx_.states;
  const Color self = ctx_.self;
  const Color opp = ~self;
  const bool cautious = std::uniform_real_distribution<double>(0, 1)(rng_) < cfg_.caution;
  const std::size_t ell_opp = cautious ? cfg_.ell_cautious : cfg_.ell;

  // Opponent set from the belief and a shared determinized state.
  std::array<LimitedStateSet, 2> sets;
  WorldState x;
  std::vector<std::size_t> shared;
  const LimitedStateSet* j0 =
      ctx_.belief.empty() ? nullptr : &ctx_.belief[uniform_index(ctx_.belief.size(), rng_)];
  if (j0) {
    for (std::size_t i = 0; i < j0->states.size(); ++i) {
      if (xs.contains(j0->states[i])) shared.push_back(i);
    }
  }
  if (!shared.empty()) {
    const std::size_t k = shared[uniform_index(shared.size(), rng_)];
    x = j0->states[k];
    sets[index_of(opp)] = make_limited(dedup_limit(j0->states, k, ell_opp, rng_), opp, j0->prev_opp);
  } else {
    x = xs[uniform_index(xs.size(), rng_)];
    sets[index_of(opp)] = make_limited({x}, opp);
  }
  sets[index_of(self)] =
      make_limited(subsample(xs.states(), cfg_.ell, index_in(xs, x), rng_), self, ctx_.prev_opp);

  arms_.clear();
  for (const Action& a : root_actions_) arms_.push_back(ctx_.stats->get(root_, action_index(a)));
  const std::size_t a0 = bandit(prior_, arms_, cfg_.bandit, true, rng_);
  Action a = root_actions_[a0];
  std::vector<PathEntry> path{{root_, action_index(a), self}};

  nlohmann::json steps;
  const char* end = "depth";
  int depth = x.phase() == Phase::kSense ? cfg_.depth_sense : cfg_.depth_move;
  for (int t = 0; t < depth; ++t) {
    ++result_.checks;
    if (!sets[0].contains(x) || !sets[1].contains(x)) ++result_.violations;

    const Color actor = x.side();
    const Color other = ~actor;
    LimitedStateSet& mine = sets[index_of(actor)];
    LimitedStateSet& theirs = sets[index_of(other)];
    const Step step = apply_action(x, a);
    const std::size_t keep_mine = index_in(mine.states, x);
    const std::size_t keep_theirs = index_in(theirs.states, x);
    const std::size_t ell_mine = actor == self ? cfg_.ell : ell_opp;
    const std::size_t ell_theirs = other == self ? cfg_.ell : ell_opp;

    std::optional<OpponentMasks> prev_mine = mine.prev_opp;
    if (!a.is_sense()) prev_mine = opponent_masks(mine.states, actor);
    mine = make_limited(progress_actor(mine.states, a, step.actor, keep_mine, ell_mine, rng_),
                        actor, prev_mine);
    const Action executed = a.is_sense() ? a : step.actor.executed.value_or(Action::pass());
    theirs = make_limited(progress_other(theirs.states, executed, step.other.capture, keep_theirs,
                                         ell_theirs, rng_),
                          other, theirs.prev_opp);
    x = step.state;

    const Color to_act = x.side();
    if (x.is_terminal() || (cfg_.static_analysis && could_win(x))) {
      // The side to act has lost its king or is about to take the other one.
      const double q = x.is_terminal() ? -1.0 : 1.0;
      backup(path, q, to_act, 1);
      if (trace_) steps.push_back({{"q", q}});
      end = x.is_terminal() ? "terminal" : "win";
      break;
    }

    const LimitedStateSet& k = sets[index_of(to_act)];
    const std::uint64_t key = node_key(k);
    for (const auto& e : path) ctx_.stats->add_visits(e.key, e.action, cfg_.virtual_loss);

    const std::vector<Action> actions = candidate_actions(k.states);
    const Synopsis syn = synopsis(k, to_act);
    const EvalOutput out = ctx_.evaluator->evaluate_one(syn, actions, headset(to_act));
    arms_.clear();
    for (const Action& b : actions) arms_.push_back(ctx_.stats->get(key, action_index(b)));
    const std::size_t pick = bandit(out.policy, arms_, cfg_.bandit, false, rng_);
    if (arms_[pick].n > cfg_.depth_threshold) ++depth;

    backup(path, out.value, to_act, 1 - cfg_.virtual_loss);
    if (trace_) steps.push_back({{"key", key}, {"action", action_index(actions[pick])}, {"q", out.value}});
    path.push_back({key, action_index(actions[pick]), to_act});
    a = actions[pick];
  }
  if (trace_) {
    nlohmann::json line{{"playout", result_.playouts},
                        {"root_action", to_string(root_actions_[a0])},
                        {"cautious", cautious},
                        {"end", end},
                        {"steps", std::move(steps)}};
    *trace_ << line.dump() << '\n';
  }
}

std::vector<float> root_prior(const PlanContext& ctx, const PlannerConfig& cfg,
                              std::span<const Action> actions, std::mt19937_64& rng) {
  const PossibleStateSet& xs = *ctx.states;
  std::vector<Synopsis> synopses;
  auto add = [&](std::optional<std::size_t> keep) {
    const LimitedStateSet l =
        make_limited(subsample(xs.states(), cfg.ell, keep, rng), ctx.self, ctx.prev_opp);
    synopses.push_back(synopsis(l, ctx.self));
  };
  if (ctx.belief.empty()) {
    for (std::size_t i = 0; i < std::min<std::size_t>(cfg.batch, 8); ++i) add(std::nullopt);
  } else {
    for (std::size_t i : sample_indices(ctx.belief.size(), cfg.batch, std::nullopt, rng)) {
      std::optional<std::size_t> keep;
      for (const auto& m : ctx.belief[i].states) {
        if (const WorldState* found = xs.find(m)) {
          keep = static_cast<std::size_t>(found - xs.states().data());
          break;
        }
      }
      add(keep);
    }
  }
  std::vector<EvalInput> inputs;
  for (const auto& s : synopses) inputs.push_back({&s, actions});
  std::vector<EvalOutput> outputs(inputs.size());
  ctx.evaluator->evaluate(inputs, ctx.own_headset, outputs);
  std::vector<float> prior(actions.size(), 0.0f);
  for (const auto& o : outputs) {
    for (std::size_t i = 0; i < prior.size(); ++i) prior[i] += o.policy[i];
  }
  for (float& p : prior) p /= static_cast<float>(outputs.size());
  return prior;
}

}  // namespace

std::uint64_t root_key(const PossibleStateSet& x) {
  std::uint64_t acc = 0;
  for (const auto& s : x) acc += mix64(s.hash());
  return mix64(acc ^ 0x0DDBA11ULL) ^ x.size();
}

std::vector<Action> root_actions(const PossibleStateSet& x) { return candidate_actions(x.states()); }

PlanResult choose_action(const PlanContext& ctx, const PlannerConfig& cfg,
                         Clock::time_point deadline, std::mt19937_64& rng, std::ostream* trace) {
  PlanResult r;
  const PossibleStateSet& xs = *ctx.states;
  const std::vector<Action> actions = root_actions(xs);
  if (actions.size() == 1) {
    r.action = actions[0];
    r.reason = PlanResult::Reason::kOnlyAction;
    r.root.push_back({actions[0], 1.0f, 0, 0});
    return r;
  }
  if (cfg.static_analysis) {
    if (auto win = static_win(xs.states())) {
      r.action = *win;
      r.reason = PlanResult::Reason::kStaticWin;
      return r;
    }
  }
  const std::vector<float> prior = root_prior(ctx, cfg, actions, rng);
  for (std::size_t i = 0; i < actions.size(); ++i) r.root.push_back({actions[i], prior[i], 0, 0});
  if (!cfg.search) {
    r.action = actions[sample_prior(prior, rng)];
    r.reason = PlanResult::Reason::kPolicy;
    return r;
  }

  const std::uint64_t root = root_key(xs);
  Search search(ctx, cfg, root, actions, prior, rng, trace, r);
  while (r.playouts < cfg.max_playouts && Clock::now() < deadline) {
    search.playout();
    ++r.playouts;
  }

  double most = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const ArmStats s = ctx.stats->get(root, action_index(actions[i]));
    r.root[i].n = s.n;
    r.root[i].q = s.q;
    most = std::max(most, s.n);
  }
  // Best mean among arms visited at least a tenth as often as the busiest.
  std::optional<std::size_t> best;
  double best_mean = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const RootArm& arm = r.root[i];
    if (arm.n <= 0 || arm.n < 0.1 * most) continue;
    const double mean = arm.q / arm.n;
    if (!best || mean > best_mean || (mean == best_mean && arm.n > r.root[*best].n)) {
      best = i;
      best_mean = mean;
    }
  }
  if (!best) {
    best = static_cast<std::size_t>(std::max_element(prior.begin(), prior.end()) - prior.begin());
    r.reason = PlanResult::Reason::kPolicy;
  }
  r.action = actions[*best];
  return r;
}

}  // namespace penumbral
