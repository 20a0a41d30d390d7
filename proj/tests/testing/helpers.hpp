// Copyright 2026 The seqcfr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only helpers: a pure-strategy enumeration oracle that works on the
// game tree directly, polytope checks, and a few hand-built games.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "seqcfr/seqcfr.hpp"

namespace seqcfr::testing {

// Every pure strategy of a decision process, as a sequence-form vector. One
// action is fixed at every decision point, reachable or not, so the count is
// the product of the action counts.
inline std::vector<std::vector<double>> EnumeratePureStrategies(const Tfsdp& t) {
  std::vector<std::vector<double>> out;
  std::vector<int> choice(t.num_decisions(), 0);
  while (true) {
    std::vector<double> x(t.num_sequences(), 0.0);
    x[kEmptySequence] = 1.0;
    for (int j = 0; j < t.num_decisions(); ++j) {
      x[t.sequence(j, choice[j])] = x[t.parent_sequence[j]];
    }
    out.push_back(std::move(x));
    int j = 0;
    while (j < t.num_decisions() && ++choice[j] == t.num_actions[j]) choice[j++] = 0;
    if (j == t.num_decisions()) break;
  }
  return out;
}

// Player 1's expected payoff, walking the game tree with the behavioral
// strategies implied by the two sequence-form vectors.
inline double TreeValue(const Game& game, const Tfsdp& t1, std::span<const double> x1,
                        const Tfsdp& t2, std::span<const double> x2) {
  std::function<double(int)> walk = [&](int id) -> double {
    const GameNode& n = game.nodes[id];
    if (n.kind == NodeKind::kTerminal) return n.payoff;
    double value = 0.0;
    if (n.kind == NodeKind::kChance) {
      for (int c : n.children) value += game.nodes[c].prob * walk(c);
      return value;
    }
    const Tfsdp& t = n.player == 1 ? t1 : t2;
    std::span<const double> x = n.player == 1 ? x1 : x2;
    const int j = t.infoset_decision[n.infoset];
    const double parent = x[t.parent_sequence[j]];
    for (size_t a = 0; a < n.children.size(); ++a) {
      const double prob = parent > 0.0 ? x[t.sequence(j, static_cast<int>(a))] / parent
                                       : 1.0 / static_cast<double>(n.children.size());
      if (prob != 0.0) value += prob * walk(n.children[a]);
    }
    return value;
  };
  return walk(Game::root());
}

struct BruteForceGains {
  double value = 0.0;
  double br1 = 0.0;
  double br2 = 0.0;
  double exploitability() const { return (br1 + br2) / 2.0; }
};

// Best-response gains by trying every pure strategy of each player.
inline BruteForceGains BruteForceBestResponses(const Game& game, const Tfsdp& t1,
                                               std::span<const double> x1, const Tfsdp& t2,
                                               std::span<const double> x2) {
  BruteForceGains g;
  g.value = TreeValue(game, t1, x1, t2, x2);
  double best1 = -std::numeric_limits<double>::infinity();
  for (const auto& p : EnumeratePureStrategies(t1)) best1 = std::max(best1, TreeValue(game, t1, p, t2, x2));
  double best2 = std::numeric_limits<double>::infinity();
  for (const auto& p : EnumeratePureStrategies(t2)) best2 = std::min(best2, TreeValue(game, t1, x1, t2, p));
  g.br1 = best1 - g.value;
  g.br2 = g.value - best2;
  return g;
}

// Largest violation of x[∅] = 1, x >= 0 and the per-decision flow
// constraints.
inline double PolytopeViolation(const Tfsdp& t, std::span<const double> x) {
  double worst = std::abs(x[kEmptySequence] - 1.0);
  for (double v : x) worst = std::max(worst, -v);
  for (int j = 0; j < t.num_decisions(); ++j) {
    double sum = 0.0;
    for (int a = 0; a < t.num_actions[j]; ++a) sum += x[t.sequence(j, a)];
    worst = std::max(worst, std::abs(sum - x[t.parent_sequence[j]]));
  }
  return worst;
}

// Player 1 makes `length` consecutive single-action decisions, then the game
// ends.
inline Game ChainGame(int length) {
  Game game;
  game.name = "chain";
  game.AddRoot(NodeKind::kDecision);
  game.SetRootDecision(1, "c0");
  int node = 0;
  for (int i = 1; i < length; ++i) node = game.AddDecision(node, "go", 1, "c" + std::to_string(i));
  game.AddTerminal(node, "go", 1.0);
  return game;
}

// A fair coin, then one player-1 decision per outcome with a single action.
// Player 1's decision process is an observation point over two decisions.
inline Game CoinThenDecision() {
  Game game;
  game.name = "coin";
  game.AddRoot(NodeKind::kChance);
  for (const char* side : {"h", "t"}) {
    const int d = game.AddDecision(0, side, 1, std::string("1:") + side);
    game.nodes[d].prob = 0.5;
    game.AddTerminal(d, "go", 1.0);
  }
  return game;
}

}  // namespace seqcfr::testing
