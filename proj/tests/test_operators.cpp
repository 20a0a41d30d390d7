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

#include <gtest/gtest.h>

#include "seqcfr/seqcfr.hpp"
#include "testing/helpers.hpp"

namespace seqcfr {
namespace {

TEST(OperatorsTest, SingleDecisionShapes) {
  const OperatorSet ops = BuildOperators(BuildTfsdp(SingleDecision(), 1));
  EXPECT_EQ(ops.A.rows(), 3);
  EXPECT_EQ(ops.A.cols(), 3);
  EXPECT_EQ(ops.A.nnz(), 3);
  EXPECT_EQ(ops.B.cols(), 2);
  ASSERT_EQ(ops.C.rows(), 1);
  ASSERT_EQ(ops.C.cols(), 2);
  EXPECT_EQ(ops.C.matrix().at(0, 0), 1.0);
  EXPECT_EQ(ops.C.matrix().at(0, 1), 1.0);
  EXPECT_EQ(ops.uniform, (Vector{0.5, 0.5}));
}

TEST(OperatorsTest, KuhnNonzeroCounts) {
  const OperatorSet ops = BuildOperators(BuildTfsdp(KuhnPoker(), 1));
  EXPECT_EQ(ops.A.nnz(), 13);
  EXPECT_EQ(ops.B.nnz(), 12);
  EXPECT_EQ(ops.C.nnz(), 12);
}

TEST(OperatorsTest, LevelsHoldEveryTreeEdge) {
  for (const Game& g : {KuhnPoker(), LeducPoker(), RandomGame(7, 3, 0.5, 9)}) {
    for (int p = 1; p <= 2; ++p) {
      const Tfsdp t = BuildTfsdp(g, p);
      const OperatorSet ops = BuildOperators(t);
      int64_t nnz = 0;
      for (const auto& level : ops.levels) nnz += level.nnz();
      EXPECT_EQ(nnz, t.num_nodes() - 1);
      EXPECT_EQ(ops.height(), t.height);
    }
  }
}

TEST(OperatorsTest, RefreshGathersBehavioralWeights) {
  OperatorSet ops = BuildOperators(BuildTfsdp(SingleDecision(), 1));
  RefreshLevels(ops, ops.uniform);
  ASSERT_EQ(ops.levels.size(), 1u);
  const auto values = ops.levels[0].matrix().values();
  EXPECT_EQ(std::vector<double>(values.begin(), values.end()), (Vector{0.5, 0.5}));

  const Vector b{0.25, 0.75};
  RefreshLevels(ops, b);
  const SparseMatrix first = ops.levels[0].matrix();
  RefreshLevels(ops, b);
  EXPECT_EQ(ops.levels[0].matrix(), first);

  Backend backend = Backend::Serial();
  const Vector e_root{1.0};
  EXPECT_EQ(Spmv(ops.levels[0].transpose(), e_root, backend), b);
}

TEST(OperatorsTest, SignalEdgesWeighOne) {
  OperatorSet ops = BuildOperators(BuildTfsdp(testing::CoinThenDecision(), 1));
  RefreshLevels(ops, Vector{1.0, 1.0});
  const auto values = ops.levels[0].matrix().values();
  EXPECT_EQ(std::vector<double>(values.begin(), values.end()), (Vector{1.0, 1.0}));
  RefreshLevels(ops, Vector{0.0, 0.0});
  EXPECT_EQ(ops.levels[0].matrix().values()[0], 1.0);
  EXPECT_EQ(ops.levels[1].matrix().values()[0], 0.0);
}

TEST(OperatorsTest, ExpandedBlockSitsAtItsDepth) {
  const Tfsdp t = BuildTfsdp(KuhnPoker(), 1);
  OperatorSet ops = BuildOperators(t);
  RefreshLevels(ops, ops.uniform);
  for (const auto& level : ops.levels) {
    const SparseMatrix full = level.Expanded(t.num_nodes());
    EXPECT_EQ(full.nnz(), level.nnz());
    for (int r = 0; r < level.matrix().rows(); ++r) {
      for (int c = 0; c < level.matrix().cols(); ++c) {
        EXPECT_EQ(full.at(r + level.row_begin(), c + level.col_begin()), level.matrix().at(r, c));
      }
    }
  }
}

TEST(PayoffMatrixTest, MatchingPennies) {
  const Game g = MatchingPennies();
  const GameBundle bundle = GameBundle::Build(g);
  const SparseMatrix& U = bundle.payoff.matrix();
  ASSERT_EQ(U.rows(), 3);
  ASSERT_EQ(U.cols(), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(U.at(0, i), 0.0);
    EXPECT_EQ(U.at(i, 0), 0.0);
  }
  EXPECT_EQ(U.at(1, 1), 1.0);
  EXPECT_EQ(U.at(1, 2), -1.0);
  EXPECT_EQ(U.at(2, 1), -1.0);
  EXPECT_EQ(U.at(2, 2), 1.0);
}

Vector UniformSequenceForm(const Tfsdp& t) {
  Vector x(t.num_sequences(), 0.0);
  x[0] = 1.0;
  for (int j = 0; j < t.num_decisions(); ++j) {
    for (int a = 0; a < t.num_actions[j]; ++a) {
      x[t.sequence(j, a)] = x[t.parent_sequence[j]] / t.num_actions[j];
    }
  }
  return x;
}

TEST(PayoffMatrixTest, KuhnUniformValueMatchesTreeWalk) {
  const Game g = KuhnPoker();
  const GameBundle bundle = GameBundle::Build(g);
  const Vector x1 = UniformSequenceForm(bundle.t1), x2 = UniformSequenceForm(bundle.t2);
  const double linear = ExpectedValue(bundle.payoff.matrix(), x1, x2);
  const auto terminals = CollectTerminals(g, bundle.t1, bundle.t2);
  EXPECT_NEAR(linear, ScalarExpectedValue(terminals, x1, x2), 1e-12);
  EXPECT_NEAR(linear, testing::TreeValue(g, bundle.t1, x1, bundle.t2, x2), 1e-12);
}

TEST(PayoffMatrixTest, AtMostOneCellPerTerminal) {
  for (const Game& g : {KuhnPoker(), LeducPoker(), RandomGame(8, 3, 0.5, 2), MatchingPennies()}) {
    const GameBundle bundle = GameBundle::Build(g);
    EXPECT_LE(bundle.payoff.nnz(), g.num_terminals()) << g.name;
  }
}

}  // namespace
}  // namespace seqcfr
