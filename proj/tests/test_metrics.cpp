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

#include <random>
#include <sstream>

#include "seqcfr/seqcfr.hpp"
#include "testing/helpers.hpp"

namespace seqcfr {
namespace {

Vector Uniform(const Tfsdp& t) {
  Backend backend = Backend::Serial();
  return RegretMinimizer(BuildOperators(t), SolverConfig{}).UniformStrategy(backend);
}

// A random point of the polytope from random behavioral strategies.
Vector RandomProfile(const Tfsdp& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector x(t.num_sequences(), 0.0);
  x[0] = 1.0;
  for (int j = 0; j < t.num_decisions(); ++j) {
    std::vector<double> w(t.num_actions[j]);
    double sum = 0.0;
    for (double& v : w) sum += (v = u(rng) < 0.2 ? 0.0 : u(rng));
    for (int a = 0; a < t.num_actions[j]; ++a) {
      const double b = sum > 0.0 ? w[a] / sum : 1.0 / t.num_actions[j];
      x[t.sequence(j, a)] = x[t.parent_sequence[j]] * b;
    }
  }
  return x;
}

TEST(ExpectedValueTest, MatrixGames) {
  const GameBundle rps = GameBundle::Build(RockPaperScissors());
  EXPECT_NEAR(ExpectedValue(rps.payoff.matrix(), Uniform(rps.t1), Uniform(rps.t2)), 0.0, 1e-15);

  const GameBundle mp = GameBundle::Build(MatchingPennies());
  const Vector heads{1, 1, 0}, tails{1, 0, 1};
  EXPECT_EQ(ExpectedValue(mp.payoff.matrix(), heads, heads), 1.0);
  EXPECT_EQ(ExpectedValue(mp.payoff.matrix(), heads, tails), -1.0);
  EXPECT_THROW(ExpectedValue(mp.payoff.matrix(), Vector{1, 1}, heads), DimensionError);
}

TEST(ExpectedValueTest, KuhnUniformMatchesTreeWalk) {
  const Game g = KuhnPoker();
  const GameBundle b = GameBundle::Build(g);
  const Vector x1 = Uniform(b.t1), x2 = Uniform(b.t2);
  EXPECT_NEAR(ExpectedValue(b.payoff.matrix(), x1, x2),
              ScalarExpectedValue(CollectTerminals(g, b.t1, b.t2), x1, x2), 1e-12);
}

TEST(ExploitabilityTest, Examples) {
  const GameBundle rps = GameBundle::Build(RockPaperScissors());
  EXPECT_NEAR(Exploitability(rps, Uniform(rps.t1), Uniform(rps.t2)), 0.0, 1e-12);

  const GameBundle mp = GameBundle::Build(MatchingPennies());
  const Vector heads{1, 1, 0};
  const auto gains = ComputeBestResponses(mp, heads, heads);
  EXPECT_EQ(gains.value, 1.0);
  EXPECT_EQ(gains.br1, 1.0);
  EXPECT_EQ(gains.br2, 1.0);
  EXPECT_EQ(gains.gain1(), 0.0);
  EXPECT_EQ(gains.gain2(), 2.0);
  EXPECT_EQ(Exploitability(mp, heads, heads), 1.0);
}

TEST(ExploitabilityTest, KuhnUniformMatchesEnumeration) {
  const Game g = KuhnPoker();
  const GameBundle b = GameBundle::Build(g);
  const Vector x1 = Uniform(b.t1), x2 = Uniform(b.t2);
  const double e = Exploitability(b, x1, x2);
  EXPECT_GT(e, 0.0);
  EXPECT_NEAR(e, testing::BruteForceBestResponses(g, b.t1, x1, b.t2, x2).exploitability(), 1e-12);
}

TEST(ExploitabilityTest, RandomProfilesMatchEnumeration) {
  std::mt19937_64 rng(17);
  for (int seed = 0; seed < 6; ++seed) {
    const Game g = RandomGame(4, 2, 0.5, static_cast<uint64_t>(seed));
    const GameBundle b = GameBundle::Build(g);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector x1 = RandomProfile(b.t1, rng), x2 = RandomProfile(b.t2, rng);
      const auto gains = ComputeBestResponses(b, x1, x2);
      const auto brute = testing::BruteForceBestResponses(g, b.t1, x1, b.t2, x2);
      EXPECT_NEAR(gains.value, brute.value, 1e-12);
      EXPECT_NEAR(gains.gain1(), brute.br1, 1e-12);
      EXPECT_NEAR(gains.gain2(), brute.br2, 1e-12);
    }
  }
}

TEST(ExploitabilityTest, NeverNegative) {
  std::mt19937_64 rng(3);
  for (const Game& g : {KuhnPoker(), LeducPoker(), RandomGame(7, 3, 0.5, 1)}) {
    const GameBundle b = GameBundle::Build(g);
    for (int trial = 0; trial < 10; ++trial) {
      EXPECT_GE(Exploitability(b, RandomProfile(b.t1, rng), RandomProfile(b.t2, rng)), -1e-10);
    }
  }
}

TEST(ConvergenceCsvTest, SchemaAndFormatting) {
  std::ostringstream os;
  const std::vector<ConvergenceRecord> records = {{10, 0.5, 0.25, 0.75, 123, 4096}};
  WriteConvergenceCsv(os, records);
  EXPECT_EQ(os.str(),
            "iteration,seconds,exploitability,current_exploitability,work,peak_bytes\n"
            "10,0.5,0.25,0.75,123,4096\n");
  EXPECT_EQ(FormatDouble(0.1), "0.10000000000000001");
}

TEST(LinearFitTest, ExactLineAndNoise) {
  const auto exact = FitLinear({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(exact.slope, 2.0, 1e-12);
  EXPECT_NEAR(exact.intercept, 1.0, 1e-12);
  EXPECT_NEAR(exact.r_squared, 1.0, 1e-12);
  EXPECT_LT(FitLinear({1, 2, 3, 4}, {1, -1, 1, -1}).r_squared, 0.5);
  EXPECT_THROW(FitLinear({1}, {1}), std::invalid_argument);
}

TEST(RandomGameForSizeTest, PicksTheClosestOddDepth) {
  EXPECT_EQ(RandomGameForSize(1000, 1).depth, 7);
  EXPECT_EQ(RandomGameForSize(10000, 1).depth, 9);
  EXPECT_EQ(RandomGameForSize(1000000, 1).depth, 13);
  EXPECT_THROW(RandomGameForSize(0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace seqcfr
