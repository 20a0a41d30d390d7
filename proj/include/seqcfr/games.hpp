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

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqcfr/game.hpp"

namespace seqcfr {

// Three-card Kuhn poker with antes of 1 and a single bet size of 1. Cards are
// dealt one player at a time (3 then 2 outcomes), giving the usual 58-node
// tree.
inline Game KuhnPoker() {
  static constexpr std::array<const char*, 3> kCards = {"J", "Q", "K"};
  Game game;
  game.name = "kuhn_poker";
  game.AddRoot(NodeKind::kChance);
  auto showdown = [](int c1, int c2, double stake) {
    return c1 > c2 ? stake : -stake;
  };
  for (int c1 = 0; c1 < 3; ++c1) {
    const int deal2 = game.AddChild(0, NodeKind::kChance, kCards[c1]);
    game.nodes[deal2].prob = 1.0 / 3.0;
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c2 == c1) continue;
      const std::string p1 = std::string("1:") + kCards[c1];
      const std::string p2 = std::string("2:") + kCards[c2];
      const int root = game.AddDecision(deal2, kCards[c2], 1, p1);
      game.nodes[root].prob = 0.5;

      const int after_pass = game.AddDecision(root, "p", 2, p2 + ":p");
      const int after_bet = game.AddDecision(root, "b", 2, p2 + ":b");

      game.AddTerminal(after_pass, "p", showdown(c1, c2, 1));
      const int pb = game.AddDecision(after_pass, "b", 1, p1 + ":pb");
      game.AddTerminal(pb, "p", -1);
      game.AddTerminal(pb, "b", showdown(c1, c2, 2));

      game.AddTerminal(after_bet, "p", 1);
      game.AddTerminal(after_bet, "b", showdown(c1, c2, 2));
    }
  }
  return game;
}

namespace internal {

struct LeducBuilder {
  static constexpr std::array<const char*, 3> kRanks = {"J", "Q", "K"};
  static constexpr int kMaxRaises = 2;

  Game& game;
  int card1 = 0;
  int card2 = 0;
  int public_card = -1;

  static int Rank(int card) { return card / 2; }

  std::string InfosetLabel(int player, const std::string& history) const {
    const int own = player == 1 ? card1 : card2;
    std::string label = std::to_string(player) + ":" + kRanks[Rank(own)];
    label += ":";
    if (public_card >= 0) label += kRanks[Rank(public_card)];
    return label + ":" + history;
  }

  double Showdown(double pot_each) const {
    const int r1 = Rank(card1), r2 = Rank(card2), rp = Rank(public_card);
    const bool pair1 = r1 == rp, pair2 = r2 == rp;
    if (pair1 != pair2) return pair1 ? pot_each : -pot_each;
    if (r1 == r2) return 0.0;
    return r1 > r2 ? pot_each : -pot_each;
  }

  // Expands one betting round below `node`, which has just been created as a
  // decision node for `player`. `history` covers all previous rounds.
  void Bet(int node, int round, int player, std::array<double, 2> stake,
           int raises, bool facing, int actions_this_round,
           const std::string& history) {
    const int opponent = 3 - player;
    const double raise_size = round == 1 ? 2.0 : 4.0;
    // Fold, call/check, raise: fold only when there is a bet to call.
    if (facing) {
      // The folding player forfeits their contribution.
      const double folder_stake = stake[player - 1];
      game.AddTerminal(node, "f", player == 1 ? -folder_stake : folder_stake);
    }
    {
      std::array<double, 2> next = stake;
      next[player - 1] = next[opponent - 1];
      const std::string h = history + "c";
      if (actions_this_round >= 1) {
        EndRound(node, round, next, h);
      } else {
        const int child = game.AddDecision(node, "c", opponent, InfosetLabel(opponent, h));
        Bet(child, round, opponent, next, raises, false, actions_this_round + 1, h);
      }
    }
    if (raises < kMaxRaises) {
      std::array<double, 2> next = stake;
      next[player - 1] = next[opponent - 1] + raise_size;
      const std::string h = history + "r";
      const int child = game.AddDecision(node, "r", opponent, InfosetLabel(opponent, h));
      Bet(child, round, opponent, next, raises + 1, true, actions_this_round + 1, h);
    }
  }

  void EndRound(int parent, int round, std::array<double, 2> stake,
                const std::string& history) {
    if (round == 2) {
      game.AddTerminal(parent, "c", Showdown(stake[0]));
      return;
    }
    const int deal = game.AddChild(parent, NodeKind::kChance, "c");
    for (int card = 0; card < 6; ++card) {
      if (card == card1 || card == card2) continue;
      public_card = card;
      const std::string h = history + "|";
      const int child = game.AddDecision(deal, kRanks[Rank(card)], 1, InfosetLabel(1, h));
      game.nodes[child].prob = 0.25;
      Bet(child, 2, 1, stake, 0, false, 0, h);
    }
    public_card = -1;
  }
};

}  // namespace internal

// Leduc hold'em: six cards (two each of J, Q, K), antes of 1, two betting
// rounds with at most two raises each, raise sizes 2 then 4, one public card.
// Players observe ranks, not card identities.
inline Game LeducPoker() {
  Game game;
  game.name = "leduc_poker";
  game.AddRoot(NodeKind::kChance);
  internal::LeducBuilder builder{game};
  for (int c1 = 0; c1 < 6; ++c1) {
    const int deal2 = game.AddChild(0, NodeKind::kChance,
                                    internal::LeducBuilder::kRanks[c1 / 2]);
    game.nodes[deal2].prob = 1.0 / 6.0;
    for (int c2 = 0; c2 < 6; ++c2) {
      if (c2 == c1) continue;
      builder.card1 = c1;
      builder.card2 = c2;
      const int root = game.AddDecision(deal2, internal::LeducBuilder::kRanks[c2 / 2], 1,
                                        builder.InfosetLabel(1, ""));
      game.nodes[root].prob = 0.2;
      builder.Bet(root, 1, 1, {1.0, 1.0}, 0, false, 0, "");
    }
  }
  return game;
}

// One simultaneous-move matrix game played sequentially: player 2 does not
// observe player 1's action. `payoffs[i][j]` is player 1's payoff.
inline Game MatrixGame(const std::string& name,
                       const std::vector<std::string>& row_actions,
                       const std::vector<std::string>& col_actions,
                       const std::vector<std::vector<double>>& payoffs) {
  Game game;
  game.name = name;
  game.AddRoot(NodeKind::kDecision);
  game.SetRootDecision(1, "1");
  for (size_t i = 0; i < row_actions.size(); ++i) {
    const int col = game.AddDecision(0, row_actions[i], 2, "2");
    for (size_t j = 0; j < col_actions.size(); ++j) {
      game.AddTerminal(col, col_actions[j], payoffs[i][j]);
    }
  }
  return game;
}

inline Game MatchingPennies() {
  return MatrixGame("matching_pennies", {"H", "T"}, {"H", "T"},
                    {{1.0, -1.0}, {-1.0, 1.0}});
}

inline Game RockPaperScissors() {
  return MatrixGame("rock_paper_scissors", {"R", "P", "S"}, {"R", "P", "S"},
                    {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
}

// A single player-1 decision with one terminal per payoff.
inline Game SingleDecision(const std::vector<double>& payoffs = {1.0, -1.0}) {
  Game game;
  game.name = "single_decision";
  game.AddRoot(NodeKind::kDecision);
  game.SetRootDecision(1, "1");
  for (size_t a = 0; a < payoffs.size(); ++a) {
    game.AddTerminal(0, "a" + std::to_string(a), payoffs[a]);
  }
  return game;
}

struct RandomGameParams {
  int depth = 1;
  int branching = 2;
  double infoset_merge_rate = 0.0;
  uint64_t seed = 0;
  // Upper bound on the generated tree size.
  int64_t max_nodes = 20'000'000;
};

// Total node count of a random game tree, saturating at int64 max.
inline int64_t RandomGameNodeCount(int depth, int branching) {
  int64_t total = 0, layer = 1;
  for (int d = 0; d <= depth; ++d) {
    if (total > std::numeric_limits<int64_t>::max() - layer) {
      return std::numeric_limits<int64_t>::max();
    }
    total += layer;
    if (d < depth) {
      if (layer > std::numeric_limits<int64_t>::max() / branching) {
        return std::numeric_limits<int64_t>::max();
      }
      layer *= branching;
    }
  }
  return total;
}

// Synthetic game with `depth` layers of internal nodes alternating between
// decision (even layers; players take turns 1, 2, 1, ...) and chance (odd
// layers). Every internal node has `branching` children; terminal payoffs are
// uniform in [-1, 1]. Within a decision layer, a node joins the most recent
// infoset sharing its player's own history with probability
// `infoset_merge_rate`, which keeps perfect recall intact.
inline Game RandomGame(const RandomGameParams& params) {
  if (params.depth < 1) throw std::invalid_argument("random game: depth must be >= 1");
  if (params.branching < 1) throw std::invalid_argument("random game: branching must be >= 1");
  if (!(params.infoset_merge_rate >= 0.0 && params.infoset_merge_rate <= 1.0)) {
    throw std::invalid_argument("random game: merge rate must be in [0,1]");
  }
  const int64_t total = RandomGameNodeCount(params.depth, params.branching);
  if (total > params.max_nodes) {
    throw std::invalid_argument("random game: " + std::to_string(total) +
                                " nodes exceeds the budget of " +
                                std::to_string(params.max_nodes));
  }

  std::mt19937_64 rng(params.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Game game;
  game.name = "random_d" + std::to_string(params.depth) + "_b" +
              std::to_string(params.branching) + "_s" + std::to_string(params.seed);
  game.nodes.reserve(static_cast<size_t>(total));
  game.AddRoot(NodeKind::kDecision);

  // Each player's last own sequence, encoded as infoset * branching + action
  // (or -1 for the empty sequence), per node of the current layer.
  struct Pending {
    int node;
    std::array<int64_t, 2> last;
  };
  std::vector<Pending> layer = {{0, {-1, -1}}};
  int decision_layers = 0;
  for (int d = 0; d < params.depth; ++d) {
    const bool decision = d % 2 == 0;
    const int player = decision ? 1 + (decision_layers++ % 2) : 0;
    std::map<int64_t, int> open_infoset;
    int created = 0;
    std::vector<Pending> next;
    next.reserve(layer.size() * params.branching);
    for (const Pending& p : layer) {
      GameNode& node = game.nodes[p.node];
      if (decision) {
        node.kind = NodeKind::kDecision;
        node.player = player;
        const int64_t key = p.last[player - 1];
        auto it = open_infoset.find(key);
        if (it != open_infoset.end() && uniform() < params.infoset_merge_rate) {
          node.infoset = it->second;
        } else {
          const int id = game.InternInfoset("P" + std::to_string(player) + ":L" +
                                            std::to_string(d) + ":" +
                                            std::to_string(created++));
          game.nodes[p.node].infoset = id;
          open_infoset[key] = id;
        }
      } else {
        node.kind = NodeKind::kChance;
      }
      const int infoset = game.nodes[p.node].infoset;
      std::vector<double> weights;
      if (!decision) {
        double sum = 0.0;
        for (int a = 0; a < params.branching; ++a) {
          weights.push_back(0.5 + uniform());
          sum += weights.back();
        }
        for (double& w : weights) w /= sum;
      }
      for (int a = 0; a < params.branching; ++a) {
        const bool leaf = d + 1 == params.depth;
        const int child = game.AddChild(p.node, leaf ? NodeKind::kTerminal : NodeKind::kChance,
                                        (decision ? "a" : "o") + std::to_string(a));
        if (!decision) game.nodes[child].prob = weights[a];
        if (leaf) game.nodes[child].payoff = 2.0 * uniform() - 1.0;
        Pending c{child, p.last};
        if (decision) c.last[player - 1] = static_cast<int64_t>(infoset) * params.branching + a;
        next.push_back(c);
      }
    }
    layer = std::move(next);
  }
  return game;
}

inline Game RandomGame(int depth, int branching, double infoset_merge_rate, uint64_t seed) {
  return RandomGame(RandomGameParams{depth, branching, infoset_merge_rate, seed});
}

}  // namespace seqcfr
