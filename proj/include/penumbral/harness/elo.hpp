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
#include <span>
#include <string>
#include <vector>

namespace penumbral {

struct GameResult {
  std::string white;
  std::string black;
  double white_score = 0.5;  // 1 win, 0 loss, 0.5 draw
};

struct EloOptions {
  std::string anchor = "RandomBot";
  double anchor_rating = 1000;
  // Standard deviation of the Gaussian prior on each rating around the
  // anchor rating. Zero gives the plain maximum likelihood fit.
  double prior_sigma = 1000;
};

struct EloRating {
  std::string name;
  double rating = 0;
  double interval = 0;  // half width of the 95% interval
  std::size_t games = 0;
  double score = 0;  // points scored
  std::size_t component = 0;
};

struct EloTable {
  std::vector<EloRating> ratings;  // sorted by rating, best first
  std::vector<std::string> anchors;  // one per connected component
  double anchor_rating = 1000;
  std::vector<std::string> warnings;
  int iterations = 0;

  const EloRating* find(const std::string& name) const;
  // Probability that `a` beats `b` under the fitted ratings.
  double predict(const std::string& a, const std::string& b) const;
};

// Logistic win model, P(a beats b) = 1 / (1 + 10^((r_b - r_a) / 400)).
double elo_win_probability(double ra, double rb);
// Rating gap that gives win probability `p`.
double elo_gap(double p);

// Maximum a posteriori ratings by Newton's method. Draws count half.
// Intervals come from the inverse of the observed information matrix.
// Each connected component of the result graph is anchored separately:
// the one holding options.anchor at anchor_rating, any other at its first
// agent by name, with a warning.
EloTable estimate_elo(std::span<const GameResult> results, const EloOptions& options = {});

}  // namespace penumbral
