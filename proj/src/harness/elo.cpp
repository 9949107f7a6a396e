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

#include "penumbral/harness/elo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace penumbral {
namespace {

constexpr double kScale = 400.0;
const double kK = std::log(10.0) / kScale;
constexpr int kMaxIterations = 200;
constexpr double kMaxStep = 400.0;
constexpr double kZ95 = 1.959963984540054;

struct Pair {
  std::size_t a, b;
  double games = 0;
  double a_score = 0;
};

// Union-find over agent indices.
std::size_t root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

double elo_win_probability(double ra, double rb) {
  return 1.0 / (1.0 + std::pow(10.0, (rb - ra) / kScale));
}

double elo_gap(double p) { return kScale * std::log10(p / (1.0 - p)); }

const EloRating* EloTable::find(const std::string& name) const {
  for (const auto& r : ratings) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

double EloTable::predict(const std::string& a, const std::string& b) const {
  const EloRating* ra = find(a);
  const EloRating* rb = find(b);
  if (!ra || !rb) return 0.5;
  return elo_win_probability(ra->rating, rb->rating);
}

EloTable estimate_elo(std::span<const GameResult> results, const EloOptions& options) {
  EloTable table;
  table.anchor_rating = options.anchor_rating;

  std::map<std::string, std::size_t> index;
  for (const auto& g : results) {
    index.emplace(g.white, 0);
    index.emplace(g.black, 0);
  }
  std::vector<std::string> names;
  for (auto& [name, i] : index) {
    i = names.size();
    names.push_back(name);
  }
  const std::size_t n = names.size();
  std::vector<EloRating> ratings(n);
  std::map<std::pair<std::size_t, std::size_t>, Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) ratings[i].name = names[i];
  for (const auto& g : results) {
    std::size_t a = index[g.white], b = index[g.black];
    double s = g.white_score;
    ratings[a].games++;
    ratings[b].games++;
    ratings[a].score += s;
    ratings[b].score += 1 - s;
    if (a == b) continue;
    if (a > b) {
      std::swap(a, b);
      s = 1 - s;
    }
    Pair& p = pairs[{a, b}];
    p.a = a;
    p.b = b;
    p.games += 1;
    p.a_score += s;
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [key, p] : pairs) parent[root(parent, p.a)] = root(parent, p.b);

  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < n; ++i) components[root(parent, i)].push_back(i);
  if (components.size() > 1) {
    table.warnings.push_back("result graph has " + std::to_string(components.size()) +
                             " components; each is anchored separately");
  }
  const auto anchor_it = index.find(options.anchor);
  if (anchor_it == index.end() && n > 0) {
    table.warnings.push_back("anchor " + options.anchor + " played no games");
  }

  const double prior_precision =
      options.prior_sigma > 0 ? 1.0 / (options.prior_sigma * options.prior_sigma) : 0.0;
  std::size_t component_id = 0;
  for (const auto& [r, members] : components) {
    std::size_t anchor = members.front();
    if (anchor_it != index.end() && root(parent, anchor_it->second) == r) anchor = anchor_it->second;
    table.anchors.push_back(names[anchor]);

    // Free parameters: every member except the anchor.
    std::vector<int> slot(n, -1);
    std::size_t m = 0;
    for (std::size_t i : members) {
      ratings[i].component = component_id;
      ratings[i].rating = options.anchor_rating;
      if (i != anchor) slot[i] = static_cast<int>(m++);
    }
    auto rating_of = [&](std::size_t i, const Eigen::VectorXd& x) {
      return slot[i] < 0 ? options.anchor_rating : x[slot[i]];
    };
    auto objective = [&](const Eigen::VectorXd& x) {
      double f = 0;
      for (const auto& [key, p] : pairs) {
        if (root(parent, p.a) != r) continue;
        const double d = kK * (rating_of(p.a, x) - rating_of(p.b, x));
        // log sigmoid(d) and log sigmoid(-d), computed stably.
        const double log_p = -std::log1p(std::exp(-std::abs(d))) + std::min(d, 0.0);
        const double log_q = -std::log1p(std::exp(-std::abs(d))) + std::min(-d, 0.0);
        f += p.a_score * log_p + (p.games - p.a_score) * log_q;
      }
      for (std::size_t i = 0; i < m; ++i) {
        const double dev = x[static_cast<Eigen::Index>(i)] - options.anchor_rating;
        f -= 0.5 * prior_precision * dev * dev;
      }
      return f;
    };
    auto derivatives = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad, Eigen::MatrixXd& info) {
      grad.setZero(static_cast<Eigen::Index>(m));
      info.setZero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (const auto& [key, p] : pairs) {
        if (root(parent, p.a) != r) continue;
        const double prob = elo_win_probability(rating_of(p.a, x), rating_of(p.b, x));
        const double g = kK * (p.a_score - p.games * prob);
        const double h = kK * kK * p.games * prob * (1 - prob);
        const int sa = slot[p.a], sb = slot[p.b];
        if (sa >= 0) {
          grad[sa] += g;
          info(sa, sa) += h;
        }
        if (sb >= 0) {
          grad[sb] -= g;
          info(sb, sb) += h;
        }
        if (sa >= 0 && sb >= 0) {
          info(sa, sb) -= h;
          info(sb, sa) -= h;
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        grad[k] -= prior_precision * (x[k] - options.anchor_rating);
        info(k, k) += prior_precision;
      }
    };

    Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), options.anchor_rating);
    Eigen::VectorXd grad;
    Eigen::MatrixXd info;
    bool converged = m == 0;
    for (int it = 0; it < kMaxIterations && !converged; ++it) {
      table.iterations = std::max(table.iterations, it + 1);
      derivatives(x, grad, info);
      // A tiny ridge keeps the system solvable when a result is one-sided.
      Eigen::MatrixXd ridged = info;
      ridged.diagonal().array() += 1e-12;
      Eigen::VectorXd step = ridged.ldlt().solve(grad);
      const double biggest = step.cwiseAbs().maxCoeff();
      if (biggest > kMaxStep) step *= kMaxStep / biggest;
      const double f0 = objective(x);
      double t = 1.0;
      while (t > 1e-6 && objective(x + t * step) < f0 - 1e-12) t *= 0.5;
      x += t * step;
      if ((t * step).cwiseAbs().maxCoeff() < 1e-9) converged = true;
    }
    if (!converged) {
      table.warnings.push_back("rating fit did not converge around " + names[anchor] +
                               "; some result is one-sided");
    }

    derivatives(x, grad, info);
    Eigen::VectorXd variance = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    if (m > 0) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
      if (lu.isInvertible()) {
        variance = lu.inverse().diagonal();
      } else {
        variance.setConstant(std::numeric_limits<double>::infinity());
      }
    }
    for (std::size_t i : members) {
      if (slot[i] < 0) continue;
      ratings[i].rating = x[slot[i]];
      ratings[i].interval = kZ95 * std::sqrt(std::max(0.0, variance[slot[i]]));
    }
    ++component_id;
  }

  std::sort(ratings.begin(), ratings.end(),
            [](const EloRating& a, const EloRating& b) { return a.rating > b.rating; });
  table.ratings = std::move(ratings);
  return table;
}

}  // namespace penumbral
