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

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace seqcfr {

enum class NodeKind { kChance, kDecision, kTerminal };

inline const char* NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kChance:
      return "chance";
    case NodeKind::kDecision:
      return "decision";
    case NodeKind::kTerminal:
      return "terminal";
  }
  return "?";
}

inline constexpr int kNoNode = -1;
inline constexpr double kChanceSumTolerance = 1e-12;

// One node of an explicit extensive-form game tree. Only the fields relevant
// to `kind` are meaningful; the rest keep their defaults.
struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  int parent = kNoNode;
  // Action or chance-outcome label on the edge from the parent.
  std::string label;
  // Decision nodes: acting player (1 or 2) and index into Game::infosets.
  int player = 0;
  int infoset = -1;
  // Probability of this outcome when the parent is a chance node.
  double prob = 0.0;
  // Terminal nodes: payoff to player 1. Player 2 receives the negation.
  double payoff = 0.0;
  std::vector<int> children;

  bool operator==(const GameNode&) const = default;
};

// Two-player zero-sum extensive-form game with chance. Node 0 is the root.
struct Game {
  std::string name;
  std::vector<GameNode> nodes;
  // Information-set labels, indexed by GameNode::infoset.
  std::vector<std::string> infosets;

  static constexpr int kNumPlayers = 2;
  static constexpr int root() { return 0; }

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  const GameNode& node(int id) const { return nodes[id]; }

  // Returns the infoset index for `label`, creating it on first use.
  int InternInfoset(const std::string& label) {
    auto it = infoset_index_.find(label);
    if (it != infoset_index_.end()) return it->second;
    const int id = static_cast<int>(infosets.size());
    infosets.push_back(label);
    infoset_index_.emplace(label, id);
    return id;
  }

  int AddRoot(NodeKind kind) {
    nodes.clear();
    GameNode root;
    root.kind = kind;
    nodes.push_back(std::move(root));
    return 0;
  }

  int AddChild(int parent, NodeKind kind, std::string label) {
    const int id = static_cast<int>(nodes.size());
    GameNode child;
    child.kind = kind;
    child.parent = parent;
    child.label = std::move(label);
    nodes.push_back(std::move(child));
    nodes[parent].children.push_back(id);
    return id;
  }

  int AddDecision(int parent, std::string label, int player,
                  const std::string& infoset) {
    const int id = AddChild(parent, NodeKind::kDecision, std::move(label));
    nodes[id].player = player;
    nodes[id].infoset = InternInfoset(infoset);
    return id;
  }

  int AddTerminal(int parent, std::string label, double payoff) {
    const int id = AddChild(parent, NodeKind::kTerminal, std::move(label));
    nodes[id].payoff = payoff;
    return id;
  }

  void SetRootDecision(int player, const std::string& infoset) {
    nodes[0].kind = NodeKind::kDecision;
    nodes[0].player = player;
    nodes[0].infoset = InternInfoset(infoset);
  }

  int num_terminals() const {
    int count = 0;
    for (const auto& n : nodes) count += n.kind == NodeKind::kTerminal;
    return count;
  }

  bool operator==(const Game& other) const {
    return name == other.name && nodes == other.nodes &&
           infosets == other.infosets;
  }

 private:
  std::map<std::string, int> infoset_index_;
};

enum class Violation {
  kNone,
  kEmpty,
  kNotATree,
  kBadKind,
  kTerminalHasChildren,
  kNoChildren,
  kBadProbability,
  kProbabilitySum,
  kBadPlayer,
  kBadInfoset,
  kInfosetSpansPlayers,
  kInfosetActionsDiffer,
  kPerfectRecall,
  kNonFinitePayoff,
};

struct ValidationReport {
  Violation violation = Violation::kNone;
  int node = kNoNode;
  std::string message;

  bool ok() const { return violation == Violation::kNone; }
  explicit operator bool() const { return ok(); }
};

namespace internal {

inline ValidationReport Fail(Violation v, int node, std::string message) {
  return {v, node, std::move(message) + " (node " + std::to_string(node) + ")"};
}

}  // namespace internal

// Checks every Game invariant and reports the first one violated.
inline ValidationReport ValidateGame(const Game& game) {
  using internal::Fail;
  const int n = game.num_nodes();
  if (n == 0) return {Violation::kEmpty, kNoNode, "game has no nodes"};

  // Tree shape: each non-root node listed exactly once, by its own parent.
  std::vector<int> listed_by(n, kNoNode);
  for (int id = 0; id < n; ++id) {
    for (int c : game.nodes[id].children) {
      if (c <= 0 || c >= n) return Fail(Violation::kNotATree, id, "not a tree: bad child id");
      if (listed_by[c] != kNoNode) {
        return Fail(Violation::kNotATree, c, "not a tree: node has two parents");
      }
      listed_by[c] = id;
    }
  }
  if (game.nodes[0].parent != kNoNode) {
    return Fail(Violation::kNotATree, 0, "not a tree: root has a parent");
  }
  for (int id = 1; id < n; ++id) {
    if (listed_by[id] == kNoNode || listed_by[id] != game.nodes[id].parent) {
      return Fail(Violation::kNotATree, id, "not a tree: parent link mismatch");
    }
  }
  // Reachability from the root rules out detached cycles.
  {
    std::vector<int> stack = {0};
    int seen = 0;
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      ++seen;
      for (int c : game.nodes[id].children) stack.push_back(c);
    }
    if (seen != n) return Fail(Violation::kNotATree, 0, "not a tree: unreachable nodes");
  }

  std::vector<int> infoset_owner(game.infosets.size(), kNoNode);
  for (int id = 0; id < n; ++id) {
    const GameNode& node = game.nodes[id];
    switch (node.kind) {
      case NodeKind::kTerminal:
        if (!node.children.empty()) {
          return Fail(Violation::kTerminalHasChildren, id, "terminal node has children");
        }
        if (!std::isfinite(node.payoff)) {
          return Fail(Violation::kNonFinitePayoff, id, "non-finite payoff");
        }
        break;
      case NodeKind::kChance: {
        if (node.children.empty()) return Fail(Violation::kNoChildren, id, "chance node has no outcomes");
        double sum = 0.0;
        for (int c : node.children) {
          const double p = game.nodes[c].prob;
          if (!(p >= 0.0 && p <= 1.0)) {
            return Fail(Violation::kBadProbability, c, "chance probability outside [0,1]");
          }
          sum += p;
        }
        if (std::abs(sum - 1.0) > kChanceSumTolerance) {
          return Fail(Violation::kProbabilitySum, id, "chance probabilities do not sum to 1");
        }
        break;
      }
      case NodeKind::kDecision: {
        if (node.children.empty()) return Fail(Violation::kNoChildren, id, "decision node has no actions");
        if (node.player != 1 && node.player != 2) {
          return Fail(Violation::kBadPlayer, id, "decision player must be 1 or 2");
        }
        if (node.infoset < 0 || node.infoset >= static_cast<int>(game.infosets.size())) {
          return Fail(Violation::kBadInfoset, id, "decision node without a valid infoset");
        }
        int& owner = infoset_owner[node.infoset];
        if (owner == kNoNode) {
          owner = id;
          break;
        }
        const GameNode& first = game.nodes[owner];
        if (first.player != node.player) {
          return Fail(Violation::kInfosetSpansPlayers, id, "infoset spans both players");
        }
        if (first.children.size() != node.children.size()) {
          return Fail(Violation::kInfosetActionsDiffer, id, "infoset action lists differ");
        }
        for (size_t a = 0; a < node.children.size(); ++a) {
          if (game.nodes[first.children[a]].label != game.nodes[node.children[a]].label) {
            return Fail(Violation::kInfosetActionsDiffer, id, "infoset action lists differ");
          }
        }
        break;
      }
      default:
        return Fail(Violation::kBadKind, id, "unknown node kind");
    }
  }

  // Perfect recall: intern each player's own (infoset, action) history and
  // require one history per infoset.
  for (int player = 1; player <= 2; ++player) {
    std::map<std::tuple<int, int, int>, int> intern;
    std::vector<int> history(n, 0);
    std::vector<int> infoset_history(game.infosets.size(), -1);
    // Node ids need not be topologically ordered, so walk from the root.
    std::vector<int> stack = {0};
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      const GameNode& node = game.nodes[id];
      const bool own = node.kind == NodeKind::kDecision && node.player == player;
      if (own) {
        int& h = infoset_history[node.infoset];
        if (h == -1) {
          h = history[id];
        } else if (h != history[id]) {
          return Fail(Violation::kPerfectRecall, id, "perfect recall violated");
        }
      }
      for (size_t a = 0; a < node.children.size(); ++a) {
        const int c = node.children[a];
        if (own) {
          const auto key = std::make_tuple(history[id], node.infoset, static_cast<int>(a));
          auto [it, inserted] = intern.emplace(key, static_cast<int>(intern.size()) + 1);
          history[c] = it->second;
        } else {
          history[c] = history[id];
        }
        stack.push_back(c);
      }
    }
  }
  return {};
}

}  // namespace seqcfr
