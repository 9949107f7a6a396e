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

#include "penumbral/harness/game.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "penumbral/core/zobrist.hpp"

namespace penumbral {
namespace {

class RuleViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json opt_size(const std::optional<std::size_t>& n) {
  return n ? nlohmann::json(*n) : nlohmann::json(nullptr);
}

std::optional<std::size_t> size_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

Action action_from(const nlohmann::json& j) {
  auto a = parse_action(j.get<std::string>());
  if (!a) throw std::invalid_argument("bad action: " + j.get<std::string>());
  return *a;
}

const char* color_name(Color c) { return c == Color::kWhite ? "white" : "black"; }

Color color_from(const std::string& s) {
  if (s == "white") return Color::kWhite;
  if (s == "black") return Color::kBlack;
  throw std::invalid_argument("bad color: " + s);
}

}  // namespace

double GameRecord::white_score() const {
  if (!winner) return 0.5;
  return *winner == Color::kWhite ? 1.0 : 0.0;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kKingCapture: return "king_capture";
    case Termination::kTurnCap: return "turn_cap";
    case Termination::kError: return "error";
  }
  return "?";
}

std::string sense_result_text(const SenseResult& r) {
  std::string out;
  for (const auto& [sq, piece] : r.squares()) {
    if (!out.empty()) out += ' ';
    out += sq.name();
    out += piece ? piece_char(*piece) : '.';
  }
  return out;
}

GameRecord play_game(Agent& white, Agent& black, const GameOptions& options) {
  GameRecord rec;
  rec.white = white.name();
  rec.black = black.name();
  rec.seed = options.seed;
  rec.white_seed = mix64(options.seed * 2 + 1);
  rec.black_seed = mix64(options.seed * 2 + 2);
  rec.turn_cap = options.turn_cap;
  const auto game_start = Clock::now();
  std::array<double, 2> remaining{options.time.clock, options.time.clock};

  WorldState s = WorldState::initial();
  try {
    white.new_game(Color::kWhite, black.name(), rec.white_seed);
    black.new_game(Color::kBlack, white.name(), rec.black_seed);
    while (true) {
      if (s.is_terminal()) {
        rec.winner = s.winner();
        rec.termination = Termination::kKingCapture;
        break;
      }
      if (s.halfturn() >= 2 * options.turn_cap) {
        rec.termination = Termination::kTurnCap;
        break;
      }
      const Color c = s.side();
      Agent& me = c == Color::kWhite ? white : black;
      Agent& other = c == Color::kWhite ? black : white;
      auto timed_act = [&](double& ms) {
        const double budget = options.time.proportional
                                  ? std::max(0.0, remaining[index_of(c)]) * options.time.fraction
                                  : options.time.per_action;
        const auto start = Clock::now();
        const auto deadline =
            start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget));
        const Action a = me.act(deadline);
        ms = ms_since(start);
        remaining[index_of(c)] -= ms / 1000.0;
        return a;
      };

      TurnRecord t;
      t.color = c;
      t.sense = timed_act(t.sense_ms);
      if (!t.sense.is_sense()) throw RuleViolation(me.name() + " did not sense: " + to_string(t.sense));
      const Step sensed = apply_action(s, t.sense);
      if (options.on_step) options.on_step(s, t.sense, sensed);
      if (sensed.actor.sense) t.sense_result = sense_result_text(*sensed.actor.sense);
      s = sensed.state;
      me.observe_own(t.sense, sensed.actor);
      other.observe_opponent(sensed.other);

      t.requested = timed_act(t.move_ms);
      const std::vector<Action> requestable = requestable_actions(s);
      if (std::find(requestable.begin(), requestable.end(), t.requested) == requestable.end()) {
        throw RuleViolation(me.name() + " requested " + to_string(t.requested));
      }
      const Step moved = apply_action(s, t.requested);
      if (options.on_step) options.on_step(s, t.requested, moved);
      t.executed = moved.actor.executed.value_or(Action::pass());
      t.capture = moved.other.capture;
      s = moved.state;
      if (!s.is_terminal()) {
        me.observe_own(t.requested, moved.actor);
        other.observe_opponent(moved.other);
      }
      t.states_white = white.tracked_states();
      t.states_black = black.tracked_states();
      rec.turns.push_back(std::move(t));
    }
  } catch (const std::exception& e) {
    rec.termination = Termination::kError;
    rec.winner.reset();
    rec.error = e.what();
  }
  rec.total_ms = ms_since(game_start);
  return rec;
}

nlohmann::json to_json(const GameRecord& r) {
  nlohmann::json turns = nlohmann::json::array();
  for (const auto& t : r.turns) {
    turns.push_back({
        {"color", color_name(t.color)},
        {"sense", to_string(t.sense)},
        {"sense_result", t.sense_result},
        {"requested", to_string(t.requested)},
        {"executed", to_string(t.executed)},
        {"capture", t.capture ? nlohmann::json(t.capture->name()) : nlohmann::json(nullptr)},
        {"states", {opt_size(t.states_white), opt_size(t.states_black)}},
        {"ms", {t.sense_ms, t.move_ms}},
    });
  }
  return {
      {"v", kGameRecordVersion},
      {"white", r.white},
      {"black", r.black},
      {"seed", r.seed},
      {"white_seed", r.white_seed},
      {"black_seed", r.black_seed},
      {"turn_cap", r.turn_cap},
      {"winner", r.winner ? nlohmann::json(color_name(*r.winner)) : nlohmann::json(nullptr)},
      {"termination", to_string(r.termination)},
      {"error", r.error},
      {"total_ms", r.total_ms},
      {"turns", std::move(turns)},
  };
}

GameRecord game_from_json(const nlohmann::json& j) {
  try {
    if (j.at("v").get<int>() != kGameRecordVersion) {
      throw std::invalid_argument("unsupported record version " + j.at("v").dump());
    }
    GameRecord r;
    r.white = j.at("white").get<std::string>();
    r.black = j.at("black").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.white_seed = j.at("white_seed").get<std::uint64_t>();
    r.black_seed = j.at("black_seed").get<std::uint64_t>();
    r.turn_cap = j.at("turn_cap").get<int>();
    if (!j.at("winner").is_null()) r.winner = color_from(j.at("winner").get<std::string>());
    const std::string term = j.at("termination").get<std::string>();
    if (term == "king_capture") {
      r.termination = Termination::kKingCapture;
    } else if (term == "turn_cap") {
      r.termination = Termination::kTurnCap;
    } else if (term == "error") {
      r.termination = Termination::kError;
    } else {
      throw std::invalid_argument("bad termination: " + term);
    }
    r.error = j.value("error", "");
    r.total_ms = j.value("total_ms", 0.0);
    for (const auto& jt : j.at("turns")) {
      TurnRecord t;
      t.color = color_from(jt.at("color").get<std::string>());
      t.sense = action_from(jt.at("sense"));
      t.requested = action_from(jt.at("requested"));
      t.executed = action_from(jt.at("executed"));
      if (!jt.at("capture").is_null()) {
        auto sq = Square::parse(jt.at("capture").get<std::string>());
        if (!sq) throw std::invalid_argument("bad capture square");
        t.capture = *sq;
      }
      t.states_white = size_from(jt.at("states").at(0));
      t.states_black = size_from(jt.at("states").at(1));
      t.sense_ms = jt.at("ms").at(0).get<double>();
      t.move_ms = jt.at("ms").at(1).get<double>();
      t.sense_result = jt.at("sense_result").get<std::string>();
      r.turns.push_back(std::move(t));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed game record: ") + e.what());
  }
}

void write_jsonl(std::ostream& out, const GameRecord& r) { out << to_json(r).dump() << '\n'; }

std::vector<GameRecord> read_jsonl(std::istream& in) {
  std::vector<GameRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(game_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

ReplayResult replay(const GameRecord& r) {
  ReplayResult out;
  auto fail = [&](std::size_t turn, const std::string& what) {
    out.ok = false;
    out.mismatch = "turn " + std::to_string(turn) + ": " + what;
    return out;
  };
  WorldState s = WorldState::initial();
  for (std::size_t i = 0; i < r.turns.size(); ++i) {
    const TurnRecord& t = r.turns[i];
    if (s.is_terminal()) return fail(i, "game already over");
    if (s.side() != t.color) return fail(i, "wrong side to act");
    if (!t.sense.is_sense() || s.phase() != Phase::kSense) return fail(i, "expected a sense");
    out.states.push_back(s);
    const Step sensed = apply_action(s, t.sense);
    const std::string seen = sensed.actor.sense ? sense_result_text(*sensed.actor.sense) : "";
    if (seen != t.sense_result) return fail(i, "sense result " + seen);
    s = sensed.state;
    if (t.requested.is_sense()) return fail(i, "expected a move");
    out.states.push_back(s);
    const Step moved = apply_action(s, t.requested);
    if (moved.actor.executed.value_or(Action::pass()) != t.executed) return fail(i, "executed move");
    if (moved.other.capture != t.capture || moved.actor.capture != t.capture) {
      return fail(i, "capture square");
    }
    s = moved.state;
  }
  out.states.push_back(s);
  switch (r.termination) {
    case Termination::kKingCapture:
      if (!s.is_terminal() || s.winner() != r.winner) return fail(r.turns.size(), "winner");
      break;
    case Termination::kTurnCap:
      if (s.is_terminal() || s.halfturn() != 2 * r.turn_cap || r.winner) {
        return fail(r.turns.size(), "turn cap");
      }
      break;
    case Termination::kError: break;
  }
  return out;
}

}  // namespace penumbral
