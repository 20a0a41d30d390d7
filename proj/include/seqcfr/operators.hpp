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

#include <cstdint>
#include <span>
#include <vector>

#include "seqcfr/game.hpp"
#include "seqcfr/sparse.hpp"
#include "seqcfr/tfsdp.hpp"

namespace seqcfr {

// Adjacency between depth d-1 and depth d, stored as a block over the two
// contiguous node ranges: rows are the nodes at depth d-1 (offset
// `row_begin`), columns the nodes at depth d (offset `col_begin`). The
// sparsity pattern is fixed; values are gathered from the behavioral
// strategy by Refresh.
class LevelMatrix {
 public:
  LevelMatrix(const Tfsdp& t, const std::vector<LevelEdge>& edges, int depth)
      : row_begin_(t.level_begin[depth - 1]), col_begin_(t.level_begin[depth]) {
    const int rows = t.level_begin[depth] - row_begin_;
    const int cols = t.level_begin[depth + 1] - col_begin_;
    std::vector<Triplet> triplets;
    triplets.reserve(edges.size());
    // Values carry the weight source temporarily so it survives sorting.
    for (const LevelEdge& e : edges) {
      triplets.push_back({e.parent - row_begin_, e.child - col_begin_,
                          static_cast<double>(e.weight_source)});
    }
    forward_ = SparseMatrix::FromTriplets(rows, cols, std::move(triplets));
    transpose_ = forward_.Transpose();
    forward_source_.assign(forward_.values().begin(), forward_.values().end());
    transpose_source_.assign(transpose_.values().begin(), transpose_.values().end());
    std::fill(forward_.mutable_values().begin(), forward_.mutable_values().end(), 0.0);
    std::fill(transpose_.mutable_values().begin(), transpose_.mutable_values().end(), 0.0);
  }

  int row_begin() const { return row_begin_; }
  int col_begin() const { return col_begin_; }
  const SparseMatrix& matrix() const { return forward_; }
  const SparseMatrix& transpose() const { return transpose_; }
  int64_t nnz() const { return forward_.nnz(); }

  // Rows of this block as a slice of a per-node vector, and likewise columns.
  template <typename T>
  std::span<T> Rows(std::span<T> per_node) const {
    return per_node.subspan(row_begin_, forward_.rows());
  }
  template <typename T>
  std::span<T> Cols(std::span<T> per_node) const {
    return per_node.subspan(col_begin_, forward_.cols());
  }

  // Action slots take b[source]; signal slots take 1.
  void Refresh(std::span<const double> behavioral) {
    Gather(forward_source_, behavioral, forward_.mutable_values());
    Gather(transpose_source_, behavioral, transpose_.mutable_values());
  }

  // The block embedded in a full |P| x |P| matrix.
  SparseMatrix Expanded(int num_nodes) const {
    std::vector<Triplet> triplets;
    for (int r = 0; r < forward_.rows(); ++r) {
      for (int64_t k = forward_.row_offsets()[r]; k < forward_.row_offsets()[r + 1]; ++k) {
        triplets.push_back({r + row_begin_, forward_.col_indices()[k] + col_begin_,
                            forward_.values()[k]});
      }
    }
    return SparseMatrix::FromTriplets(num_nodes, num_nodes, std::move(triplets));
  }

  size_t bytes() const {
    return forward_.bytes() + transpose_.bytes() +
           (forward_source_.capacity() + transpose_source_.capacity()) * sizeof(int);
  }

 private:
  static void Gather(const std::vector<int>& sources, std::span<const double> b,
                     std::span<double> out) {
    for (size_t k = 0; k < sources.size(); ++k) {
      out[k] = sources[k] == kConstantWeight ? 1.0 : b[sources[k]];
    }
  }

  int row_begin_;
  int col_begin_;
  SparseMatrix forward_;
  SparseMatrix transpose_;
  std::vector<int> forward_source_;
  std::vector<int> transpose_source_;
};

// The iteration-invariant operators for one player's decision process:
//   A (|P| x |Σ|)   A[p, σ] = 1 iff p = ρ(σ)
//   B (|P| x |Σ+|)  A without the ∅ column
//   C (|J| x |Σ+|)  C[j, (j', a)] = 1 iff j = j'
// plus one LevelMatrix per depth and the uniform fallback strategy.
struct OperatorSet {
  int num_nodes = 0;
  int num_sequences = 0;
  int num_decisions = 0;
  int root = 0;
  SparseOperator A;
  SparseOperator B;
  SparseOperator C;
  std::vector<LevelMatrix> levels;
  // 1 / |A_j| for every (j, a) in Σ+.
  Vector uniform;

  int height() const { return static_cast<int>(levels.size()); }
  int num_nonempty_sequences() const { return num_sequences - 1; }

  size_t bytes() const {
    size_t total = A.bytes() + B.bytes() + C.bytes() + uniform.capacity() * sizeof(double);
    for (const auto& l : levels) total += l.bytes();
    return total;
  }
};

inline OperatorSet BuildOperators(const Tfsdp& t) {
  OperatorSet ops;
  ops.num_nodes = t.num_nodes();
  ops.num_sequences = t.num_sequences();
  ops.num_decisions = t.num_decisions();
  ops.root = t.root();
  const int plus = t.num_nonempty_sequences();

  std::vector<Triplet> a, b, c;
  a.reserve(t.num_sequences());
  b.reserve(plus);
  c.reserve(plus);
  ops.uniform.resize(plus);
  for (int s = 0; s < t.num_sequences(); ++s) {
    a.push_back({t.sequence_node[s], s, 1.0});
    if (s == kEmptySequence) continue;
    const int j = t.sequence_decision[s];
    b.push_back({t.sequence_node[s], s - 1, 1.0});
    c.push_back({j, s - 1, 1.0});
    ops.uniform[s - 1] = 1.0 / t.num_actions[j];
  }
  ops.A = SparseOperator(SparseMatrix::FromTriplets(t.num_nodes(), t.num_sequences(), std::move(a)));
  ops.B = SparseOperator(SparseMatrix::FromTriplets(t.num_nodes(), plus, std::move(b)));
  ops.C = SparseOperator(SparseMatrix::FromTriplets(t.num_decisions(), plus, std::move(c)));

  const auto edges = LevelDecomposition(t);
  ops.levels.reserve(edges.size());
  for (size_t d = 0; d < edges.size(); ++d) {
    ops.levels.emplace_back(t, edges[d], static_cast<int>(d) + 1);
  }
  return ops;
}

inline void RefreshLevels(OperatorSet& ops, std::span<const double> behavioral) {
  internal::CheckSize(behavioral.size(), ops.num_nonempty_sequences(), "behavioral strategy");
  for (auto& level : ops.levels) level.Refresh(behavioral);
}

// Sequence-form payoff matrix over Σ1 x Σ2: each terminal adds its chance
// reach times player 1's payoff at (player 1's last sequence, player 2's
// last sequence). Player 1's expected value of (x1, x2) is x1ᵀ U x2.
inline SparseMatrix BuildPayoffMatrix(const Game& game, const Tfsdp& t1, const Tfsdp& t2) {
  struct Item {
    int node;
    double reach;
    int s1;
    int s2;
  };
  std::vector<Triplet> triplets;
  std::vector<Item> stack = {{Game::root(), 1.0, kEmptySequence, kEmptySequence}};
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    const GameNode& node = game.nodes[item.node];
    switch (node.kind) {
      case NodeKind::kTerminal:
        triplets.push_back({item.s1, item.s2, item.reach * node.payoff});
        break;
      case NodeKind::kChance:
        for (int c : node.children) {
          stack.push_back({c, item.reach * game.nodes[c].prob, item.s1, item.s2});
        }
        break;
      case NodeKind::kDecision: {
        const Tfsdp& t = node.player == 1 ? t1 : t2;
        const int j = t.infoset_decision[node.infoset];
        for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
          Item next{node.children[a], item.reach, item.s1, item.s2};
          (node.player == 1 ? next.s1 : next.s2) = t.sequence(j, a);
          stack.push_back(next);
        }
        break;
      }
    }
  }
  return SparseMatrix::FromTriplets(t1.num_sequences(), t2.num_sequences(), std::move(triplets));
}

}  // namespace seqcfr
