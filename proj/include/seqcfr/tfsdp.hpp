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

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqcfr/errors.hpp"
#include "seqcfr/game.hpp"

namespace seqcfr {

enum class PointKind : uint8_t { kDecision, kObservation, kEnd };

inline constexpr int kEmptySequence = 0;
inline constexpr int kConstantWeight = -1;

// An edge of the decision process between depth d-1 and depth d. Action
// edges leave decision points and are weighted by the behavioral probability
// of their sequence; signal edges leave observation points and weigh 1.
struct LevelEdge {
  int parent;
  int child;
  // Index into Σ+ (sequence index minus one) or kConstantWeight.
  int weight_source;

  bool operator==(const LevelEdge&) const = default;
};

// One player's tree-form sequential decision process.
//
// Nodes are numbered breadth-first from the root, so every depth occupies a
// contiguous id range and the children of a node are contiguous. Decision
// points and sequences are numbered in the same order; sequence 0 is the
// empty sequence and the actions of decision point j occupy the contiguous
// sequence range [first_sequence[j], first_sequence[j] + num_actions[j]).
struct Tfsdp {
  int player = 1;

  // Per node.
  std::vector<PointKind> kind;
  std::vector<int> parent;
  std::vector<int> depth;
  std::vector<int> child_begin;   // children are [child_begin, child_begin + num_children)
  std::vector<int> num_children;
  std::vector<int> node_decision;  // decision point index or -1
  std::vector<int> node_sequence;  // σ with ρ(σ) = node, or -1

  // Per decision point.
  std::vector<int> decision_node;
  std::vector<int> parent_sequence;  // p_j
  std::vector<int> first_sequence;
  std::vector<int> num_actions;
  std::vector<int> decision_infoset;  // game infoset id

  // Per sequence (index 0 = ∅).
  std::vector<int> sequence_decision;  // -1 for ∅
  std::vector<int> sequence_action;    // -1 for ∅
  std::vector<int> sequence_node;      // ρ(σ); ρ(∅) is the root
  std::vector<std::string> sequence_label;

  // Game infoset id -> decision point, or -1 when owned by the other player.
  std::vector<int> infoset_decision;

  int height = 0;  // k
  int degree = 0;  // B

  int root() const { return 0; }
  int num_nodes() const { return static_cast<int>(kind.size()); }
  int num_decisions() const { return static_cast<int>(decision_node.size()); }
  int num_sequences() const { return static_cast<int>(sequence_node.size()); }
  int num_nonempty_sequences() const { return num_sequences() - 1; }

  // Sequence index of action `action` at decision point `j`.
  int sequence(int j, int action) const { return first_sequence[j] + action; }

  // Nodes at depth d occupy [level_begin[d], level_begin[d + 1]).
  std::vector<int> level_begin;
};

namespace internal {

struct SequenceKey {
  int infoset;
  int action;
  bool operator==(const SequenceKey&) const = default;
};

struct SequenceKeyHash {
  size_t operator()(const SequenceKey& k) const {
    return std::hash<int64_t>()((static_cast<int64_t>(k.infoset) << 32) ^ (k.action + 1));
  }
};

// What the player may encounter right after a sequence: the infosets whose
// parent sequence it is (in discovery order) and whether play can end with
// no further own decision.
struct Continuation {
  std::vector<int> infosets;
  bool reaches_end = false;
};

}  // namespace internal

// Extracts `player`'s decision process. A sequence whose continuation is a
// single infoset maps directly to that decision point, one that can only end
// maps to an end node, and anything else maps to an observation point with
// one child per next infoset plus one end child when play can stop there.
// Throws ValidationError on imperfect recall.
inline Tfsdp BuildTfsdp(const Game& game, int player) {
  using internal::Continuation;
  using internal::SequenceKey;
  if (player != 1 && player != 2) throw std::invalid_argument("player must be 1 or 2");

  // Discover continuations by walking the game tree with each node's own
  // last sequence (infoset, action); ∅ is (-1, -1).
  std::unordered_map<SequenceKey, Continuation, internal::SequenceKeyHash> cont;
  std::vector<int> infoset_parent(game.infosets.size(), -2);
  std::vector<SequenceKey> infoset_parent_key(game.infosets.size(), SequenceKey{-1, -1});
  std::vector<int> infoset_actions(game.infosets.size(), 0);
  std::vector<int> infoset_node(game.infosets.size(), kNoNode);
  {
    struct Item {
      int node;
      SequenceKey last;
    };
    std::vector<Item> stack = {{Game::root(), {-1, -1}}};
    while (!stack.empty()) {
      const Item item = stack.back();
      stack.pop_back();
      const GameNode& node = game.nodes[item.node];
      if (node.kind == NodeKind::kTerminal) {
        cont[item.last].reaches_end = true;
        continue;
      }
      const bool own = node.kind == NodeKind::kDecision && node.player == player;
      if (own) {
        const int I = node.infoset;
        if (infoset_parent[I] == -2) {
          infoset_parent[I] = 0;
          infoset_parent_key[I] = item.last;
          infoset_actions[I] = static_cast<int>(node.children.size());
          infoset_node[I] = item.node;
          cont[item.last].infosets.push_back(I);
        } else if (!(infoset_parent_key[I] == item.last)) {
          throw ValidationError("perfect recall violated at infoset " + game.infosets[I]);
        }
      }
      // Reverse push keeps discovery in child order.
      for (int a = static_cast<int>(node.children.size()) - 1; a >= 0; --a) {
        stack.push_back({node.children[a], own ? SequenceKey{node.infoset, a} : item.last});
      }
    }
  }

  Tfsdp t;
  t.player = player;
  t.infoset_decision.assign(game.infosets.size(), -1);

  // Breadth-first construction. A queue entry is either the image of a
  // sequence (kind decided from its continuation), a specific infoset
  // (child of an observation point) or an end node.
  struct Item {
    enum Type { kSequence, kInfoset, kEnd } type;
    int parent_node;
    int sequence;  // kSequence: the sequence being mapped; otherwise its parent sequence
    int infoset;   // kInfoset only
    int weight_source;
  };
  std::vector<SequenceKey> seq_key = {{-1, -1}};
  t.sequence_decision.push_back(-1);
  t.sequence_action.push_back(-1);
  t.sequence_node.push_back(0);
  t.sequence_label.push_back("");

  std::vector<Item> queue = {{Item::kSequence, -1, kEmptySequence, -1, kConstantWeight}};
  for (size_t head = 0; head < queue.size(); ++head) {
    Item item = queue[head];
    const int id = static_cast<int>(head);
    int infoset = -1;
    int parent_seq = item.sequence;
    PointKind kind = PointKind::kEnd;
    const Continuation* c = nullptr;
    if (item.type == Item::kSequence) {
      t.sequence_node[item.sequence] = id;
      auto it = cont.find(seq_key[item.sequence]);
      if (it != cont.end()) c = &it->second;
      const size_t fanout = c ? c->infosets.size() + (c->reaches_end ? 1 : 0) : 0;
      if (c && fanout > 1) {
        kind = PointKind::kObservation;
      } else if (c && c->infosets.size() == 1) {
        kind = PointKind::kDecision;
        infoset = c->infosets[0];
      }
    } else if (item.type == Item::kInfoset) {
      kind = PointKind::kDecision;
      infoset = item.infoset;
    }

    t.kind.push_back(kind);
    t.parent.push_back(item.parent_node);
    t.depth.push_back(item.parent_node < 0 ? 0 : t.depth[item.parent_node] + 1);
    t.node_sequence.push_back(item.type == Item::kSequence ? item.sequence : -1);
    t.node_decision.push_back(-1);
    t.child_begin.push_back(static_cast<int>(queue.size()));
    t.num_children.push_back(0);

    if (kind == PointKind::kDecision) {
      const int j = t.num_decisions();
      t.node_decision[id] = j;
      t.infoset_decision[infoset] = j;
      t.decision_node.push_back(id);
      t.parent_sequence.push_back(parent_seq);
      t.decision_infoset.push_back(infoset);
      t.first_sequence.push_back(t.num_sequences());
      t.num_actions.push_back(infoset_actions[infoset]);
      for (int a = 0; a < infoset_actions[infoset]; ++a) {
        const int s = t.num_sequences();
        seq_key.push_back({infoset, a});
        t.sequence_decision.push_back(j);
        t.sequence_action.push_back(a);
        t.sequence_node.push_back(-1);
        const GameNode& at = game.nodes[infoset_node[infoset]];
        t.sequence_label.push_back(game.infosets[infoset] + "/" + game.nodes[at.children[a]].label);
        queue.push_back({Item::kSequence, id, s, -1, s - 1});
      }
    } else if (kind == PointKind::kObservation) {
      for (int child : c->infosets) {
        queue.push_back({Item::kInfoset, id, parent_seq, child, kConstantWeight});
      }
      if (c->reaches_end) queue.push_back({Item::kEnd, id, parent_seq, -1, kConstantWeight});
    }
    t.num_children[id] = static_cast<int>(queue.size()) - t.child_begin[id];
  }

  const int n = t.num_nodes();
  t.height = n > 0 ? t.depth.back() : 0;
  t.degree = n > 0 ? *std::max_element(t.num_children.begin(), t.num_children.end()) : 0;
  t.level_begin.assign(t.height + 2, n);
  for (int id = n - 1; id >= 0; --id) t.level_begin[t.depth[id]] = id;
  return t;
}

// Weight source of the edge entering `child` (which must not be the root).
inline int EdgeWeightSource(const Tfsdp& t, int child) {
  const int parent = t.parent[child];
  if (t.kind[parent] == PointKind::kDecision) return t.node_sequence[child] - 1;
  return kConstantWeight;
}

// Edges grouped by the depth of their child: entry d - 1 holds the edges
// from depth d - 1 to depth d, for d = 1..height.
inline std::vector<std::vector<LevelEdge>> LevelDecomposition(const Tfsdp& t) {
  std::vector<std::vector<LevelEdge>> levels(t.height);
  for (int id = 1; id < t.num_nodes(); ++id) {
    levels[t.depth[id] - 1].push_back({t.parent[id], id, EdgeWeightSource(t, id)});
  }
  return levels;
}

inline const char* PointKindName(PointKind kind) {
  switch (kind) {
    case PointKind::kDecision:
      return "decision";
    case PointKind::kObservation:
      return "observation";
    case PointKind::kEnd:
      return "end";
  }
  return "?";
}

// Debug listing: one line per node with id, kind, depth, parent and the
// label of the sequence mapped to it (if any).
inline void DumpTfsdp(const Tfsdp& t, std::ostream& os) {
  for (int id = 0; id < t.num_nodes(); ++id) {
    const int s = t.node_sequence[id];
    os << id << ' ' << PointKindName(t.kind[id]) << ' ' << t.depth[id] << ' ' << t.parent[id]
       << ' ' << (s < 0 ? "-" : (s == 0 ? "<empty>" : t.sequence_label[s])) << '\n';
  }
}

}  // namespace seqcfr
