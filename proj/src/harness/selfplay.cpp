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

#include "penumbral/harness/selfplay.hpp"

#include <algorithm>
#include <ostream>

#include "penumbral/core/zobrist.hpp"
#include "penumbral/eval/action_index.hpp"
#include "penumbral/track/tracker.hpp"

namespace penumbral {

std::vector<SynopsisRecord> extract_examples(const GameRecord& record, const ExampleOptions& options,
                                             std::mt19937_64& rng) {
  std::vector<SynopsisRecord> out;
  if (record.aborted()) return out;
  const ReplayResult rep = replay(record);
  if (!rep.ok) return out;
  const Tracker::Config cfg{.cap = options.cap, .window_steps = options.window};
  std::array<Tracker, 2> trackers{Tracker(Color::kWhite, cfg), Tracker(Color::kBlack, cfg)};
  try {
    for (std::size_t i = 0; i + 1 < rep.states.size(); ++i) {
      const WorldState& s = rep.states[i];
      const Color actor = s.side();
      const Tracker& mine = trackers[index_of(actor)];
      const TurnRecord& t = record.turns[i / 2];
      const Action a = i % 2 == 0 ? t.sense : t.requested;
      if (!mine.overflowed()) {
        const auto& xs = mine.current();
        const WorldState* found = xs.find(s);
        if (!found) throw TrackingError("true state missing from replayed tracking");
        const auto truth = static_cast<std::size_t>(found - xs.states().data());
        const LimitedStateSet l =
            make_limited(subsample(xs.states(), options.ell, truth, rng), actor, mine.prev_opp());
        SynopsisRecord r;
        r.synopsis = synopsis(l, actor);
        r.action = static_cast<std::uint16_t>(action_index(a));
        if (record.winner) r.value = *record.winner == actor ? 1 : -1;
        out.push_back(r);
      }
      const Step step = apply_action(s, a);
      if (step.state.is_terminal()) break;
      trackers[index_of(actor)].observe_own(a, step.actor);
      trackers[index_of(~actor)].observe_opponent(step.other);
    }
  } catch (const std::exception&) {
    out.clear();
  }
  return out;
}

SelfplayResult selfplay(const SelfplayOptions& options, std::ostream& synopses) {
  SelfplayResult result;
  std::mt19937_64 rng(mix64(options.seed));
  AgentSpec second = options.agent;
  second.name += "2";
  const auto white = make_agent(options.agent);
  const auto black = make_agent(second);
  for (std::size_t g = 0; g < options.games; ++g) {
    GameOptions game;
    game.seed = mix64(options.seed + g);
    game.turn_cap = options.turn_cap;
    game.time = options.time;
    GameRecord rec = play_game(*white, *black, game);
    for (const auto& r : extract_examples(rec, options.examples, rng)) {
      write_synopsis_record(synopses, r);
      ++result.examples;
    }
    result.games.push_back(std::move(rec));
  }
  return result;
}

}  // namespace penumbral
