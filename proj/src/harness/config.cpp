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

#include "penumbral/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "toml.hpp"

namespace penumbral {
namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

double number(const toml::node& n, const std::string& key) {
  if (auto v = n.value<double>()) return *v;
  bad(key + " must be a number");
}

std::int64_t integer(const toml::node& n, const std::string& key) {
  if (auto v = n.as_integer()) return v->get();
  bad(key + " must be an integer");
}

std::size_t count(const toml::node& n, const std::string& key) {
  const std::int64_t v = integer(n, key);
  if (v < 0) bad(key + " must not be negative");
  return static_cast<std::size_t>(v);
}

bool boolean(const toml::node& n, const std::string& key) {
  if (auto v = n.as_boolean()) return v->get();
  bad(key + " must be true or false");
}

std::string text(const toml::node& n, const std::string& key) {
  if (auto v = n.as_string()) return v->get();
  bad(key + " must be a string");
}

const toml::table& table_of(const toml::node& n, const std::string& key) {
  if (auto t = n.as_table()) return *t;
  bad(key + " must be a table");
}

AgentSpec parse_agent(const toml::table& t, std::size_t index) {
  const std::string where = "agents[" + std::to_string(index) + "]";
  const toml::node* kind_node = t.get("kind");
  if (!kind_node) bad(where + ".kind is required");
  const std::string kind_text = text(*kind_node, where + ".kind");
  const auto kind = parse_agent_kind(kind_text);
  if (!kind) bad(where + ".kind: unknown agent kind " + kind_text);
  AgentSpec s = default_spec(*kind);
  PlannerConfig& p = s.planner;
  for (const auto& [k, v] : t) {
    const std::string key{k.str()};
    const std::string name = where + "." + key;
    if (key == "kind") continue;
    if (key == "name") {
      s.name = text(v, name);
    } else if (key == "c") {
      p.bandit.c = number(v, name);
    } else if (key == "m") {
      if (v.is_string() && text(v, name) == "inf") {
        p.bandit.m = kInfiniteMixing;
      } else {
        p.bandit.m = number(v, name);
      }
    } else if (key == "kappa") {
      p.caution = number(v, name);
    } else if (key == "phi") {
      p.bandit.phi = number(v, name);
    } else if (key == "bandit_kind") {
      const std::string b = text(v, name);
      if (b == "ucb1") {
        p.bandit.kind = BanditKind::kUcb1;
      } else if (b == "avop") {
        p.bandit.kind = BanditKind::kAvop;
      } else {
        bad(name + ": expected ucb1 or avop");
      }
    } else if (key == "ell") {
      p.ell = count(v, name);
    } else if (key == "ell_cautious") {
      p.ell_cautious = count(v, name);
    } else if (key == "depth_sense") {
      p.depth_sense = static_cast<int>(count(v, name));
    } else if (key == "depth_move") {
      p.depth_move = static_cast<int>(count(v, name));
    } else if (key == "depth_threshold") {
      p.depth_threshold = number(v, name);
    } else if (key == "virtual_loss") {
      p.virtual_loss = number(v, name);
    } else if (key == "batch") {
      p.batch = count(v, name);
    } else if (key == "static_analysis") {
      p.static_analysis = boolean(v, name);
    } else if (key == "search") {
      p.search = boolean(v, name);
    } else if (key == "particles") {
      s.belief.particles = count(v, name);
    } else if (key == "belief_ell") {
      s.belief.ell = count(v, name);
    } else if (key == "tracker_cap") {
      s.tracker_cap = count(v, name);
    } else if (key == "tracker_window") {
      s.tracker_window = count(v, name);
    } else if (key == "table_capacity") {
      s.table_capacity = count(v, name);
    } else if (key == "weights") {
      s.weights = text(v, name);
    } else {
      bad("unknown key " + name);
    }
  }
  return s;
}

}  // namespace

TournamentConfig parse_tournament_config(std::string_view text_in) {
  toml::table root;
  try {
    root = toml::parse(text_in);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " at line " << e.source().begin.line;
    bad(msg.str());
  }
  TournamentConfig cfg;
  TournamentOptions& o = cfg.options;
  const toml::array* pairings = nullptr;
  for (const auto& [k, v] : root) {
    const std::string key{k.str()};
    if (key == "games_per_pair") {
      o.games_per_pair = count(v, key);
    } else if (key == "seed") {
      o.seed = count(v, key);
    } else if (key == "turn_cap") {
      o.turn_cap = static_cast<int>(count(v, key));
    } else if (key == "workers") {
      o.workers = count(v, key);
    } else if (key == "max_attempts") {
      o.max_attempts = static_cast<int>(count(v, key));
    } else if (key == "time") {
      for (const auto& [tk, tv] : table_of(v, key)) {
        const std::string name = "time." + std::string(tk.str());
        if (tk == "per_action") {
          o.time.per_action = number(tv, name);
        } else if (tk == "proportional") {
          o.time.proportional = boolean(tv, name);
        } else if (tk == "clock") {
          o.time.clock = number(tv, name);
        } else if (tk == "fraction") {
          o.time.fraction = number(tv, name);
        } else {
          bad("unknown key " + name);
        }
      }
    } else if (key == "elo") {
      for (const auto& [ek, ev] : table_of(v, key)) {
        const std::string name = "elo." + std::string(ek.str());
        if (ek == "anchor") {
          o.elo.anchor = text(ev, name);
        } else if (ek == "rating") {
          o.elo.anchor_rating = number(ev, name);
        } else if (ek == "prior_sigma") {
          o.elo.prior_sigma = number(ev, name);
        } else {
          bad("unknown key " + name);
        }
      }
    } else if (key == "agents") {
      const toml::array* agents = v.as_array();
      if (!agents) bad("agents must be an array of tables");
      for (std::size_t i = 0; i < agents->size(); ++i) {
        cfg.agents.push_back(parse_agent(table_of((*agents)[i], "agents[" + std::to_string(i) + "]"), i));
      }
    } else if (key == "pairings") {
      pairings = v.as_array();
      if (!pairings) bad("pairings must be an array of tables");
    } else {
      bad("unknown key " + key);
    }
  }
  if (cfg.agents.size() < 2) bad("at least two agents are required");
  std::set<std::string> names;
  for (const auto& a : cfg.agents) {
    if (!names.insert(a.name).second) bad("duplicate agent name " + a.name);
  }
  if (pairings) {
    auto find = [&](const std::string& name) {
      for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
        if (cfg.agents[i].name == name) return i;
      }
      bad("pairing names unknown agent " + name);
    };
    for (std::size_t i = 0; i < pairings->size(); ++i) {
      const std::string where = "pairings[" + std::to_string(i) + "]";
      const toml::table& t = table_of((*pairings)[i], where);
      const toml::node* a = t.get("a");
      const toml::node* b = t.get("b");
      if (!a || !b || t.size() != 2) bad(where + " needs exactly a and b");
      const std::size_t ia = find(text(*a, where + ".a"));
      const std::size_t ib = find(text(*b, where + ".b"));
      if (ia == ib) bad(where + " pairs an agent with itself");
      cfg.pairings.emplace_back(ia, ib);
    }
  }
  return cfg;
}

TournamentConfig load_tournament_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_tournament_config(text.str());
}

}  // namespace penumbral
