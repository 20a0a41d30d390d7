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

// Scalar reference implementations: sequence-form CFR and its variants as
// explicit per-decision-point loops, plus expected value and best response by
// tree traversal. Slow and simple; used as ground truth for the sparse
// solver and for exploitability.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "seqcfr/config.hpp"
#include "seqcfr/game.hpp"
#include "seqcfr/sparse.hpp"
#include "seqcfr/tfsdp.hpp"

namespace seqcfr {

struct ScalarCfrState {
  std::vector<std::vector<double>> regrets;     // r_j
  std::vector<std::vector<double>> behavioral;  // b_j of the latest strategy
  std::vector<double> values;                   // v, per node
  int64_t t = 1;
};

class ScalarCfr {
 public:
  ScalarCfr(const Tfsdp& tfsdp, SolverConfig config) : t_(tfsdp), config_(config) {
    state_.regrets.resize(t_.num_decisions());
    state_.behavioral.resize(t_.num_decisions());
    for (int j = 0; j < t_.num_decisions(); ++j) {
      state_.regrets[j].assign(t_.num_actions[j], 0.0);
      state_.behavioral[j].assign(t_.num_actions[j], 1.0 / t_.num_actions[j]);
    }
    state_.values.assign(t_.num_nodes(), 0.0);
  }

  const ScalarCfrState& state() const { return state_; }
  ScalarCfrState& mutable_state() { return state_; }
  void set_t(int64_t t) { state_.t = t; }

  // b_j = r_j^+ / |r_j^+|_1 (uniform when zero), then x[(j,a)] = x[p_j] b_j[a]
  // over decision points in top-down order.
  std::vector<double> NextStrategy() {
    for (int j = 0; j < t_.num_decisions(); ++j) {
      const auto& r = state_.regrets[j];
      auto& b = state_.behavioral[j];
      double norm = 0.0;
      for (double v : r) norm += v > 0.0 ? v : 0.0;
      for (size_t a = 0; a < r.size(); ++a) {
        b[a] = norm == 0.0 ? 1.0 / r.size() : (r[a] > 0.0 ? r[a] : 0.0) / norm;
      }
    }
    std::vector<double> x(t_.num_sequences(), 0.0);
    x[kEmptySequence] = 1.0;
    for (int j = 0; j < t_.num_decisions(); ++j) {
      for (int a = 0; a < t_.num_actions[j]; ++a) {
        x[t_.sequence(j, a)] = x[t_.parent_sequence[j]] * state_.behavioral[j][a];
      }
    }
    return x;
  }

  // Predictive step: observe `prediction` with the previous behavioral
  // strategy, compute the strategy from the predicted regrets, then restore.
  std::vector<double> NextStrategy(const std::vector<double>& prediction) {
    const auto backup = state_.regrets;
    UpdateRegrets(prediction);
    if (FloorsRegrets(config_.variant)) Floor();
    auto x = NextStrategy();
    state_.regrets = backup;
    return x;
  }

  // Bottom-up counterfactual values, then the regret update, then the
  // variant's post-processing (flooring or discounting).
  void ObserveUtility(const std::vector<double>& u) {
    UpdateRegrets(u);
    if (FloorsRegrets(config_.variant)) Floor();
    if (config_.variant == Variant::kDcfr) {
      const double pos = DiscountFactor(state_.t, config_.alpha);
      const double neg = DiscountFactor(state_.t, config_.beta);
      for (auto& r : state_.regrets) {
        for (double& v : r) v *= v > 0.0 ? pos : (v < 0.0 ? neg : 1.0);
      }
    }
  }

  // Flattened regrets over Σ+ in sequence order.
  std::vector<double> FlatRegrets() const {
    std::vector<double> out;
    for (const auto& r : state_.regrets) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

 private:
  void UpdateRegrets(const std::vector<double>& u) {
    auto& v = state_.values;
    for (int p = t_.num_nodes() - 1; p >= 0; --p) {
      double value = 0.0;
      if (t_.kind[p] == PointKind::kDecision) {
        // Immediate utility first, then the continuation values.
        const int j = t_.node_decision[p];
        const auto& b = state_.behavioral[j];
        for (int a = 0; a < t_.num_actions[j]; ++a) value += b[a] * u[t_.sequence(j, a)];
        for (int a = 0; a < t_.num_actions[j]; ++a) {
          value += b[a] * v[t_.sequence_node[t_.sequence(j, a)]];
        }
      } else if (t_.kind[p] == PointKind::kObservation) {
        for (int c = 0; c < t_.num_children[p]; ++c) value += v[t_.child_begin[p] + c];
      }
      v[p] = value;
    }
    for (int j = 0; j < t_.num_decisions(); ++j) {
      std::vector<double> cf(t_.num_actions[j]);
      double expected = 0.0;
      for (int a = 0; a < t_.num_actions[j]; ++a) {
        const int s = t_.sequence(j, a);
        cf[a] = u[s] + v[t_.sequence_node[s]];
        expected += state_.behavioral[j][a] * cf[a];
      }
      for (int a = 0; a < t_.num_actions[j]; ++a) {
        double& r = state_.regrets[j][a];
        r = (r + cf[a]) - expected;
      }
    }
  }

  void Floor() {
    for (auto& r : state_.regrets) {
      for (double& v : r) v = v > 0.0 ? v : 0.0;
    }
  }

  const Tfsdp& t_;
  SolverConfig config_;
  ScalarCfrState state_;
};

// (chance reach x player-1 payoff, player-1 last sequence, player-2 last
// sequence) for every terminal, by a direct game-tree walk.
struct TerminalContribution {
  double weight;
  int s1;
  int s2;
};

inline std::vector<TerminalContribution> CollectTerminals(const Game& game, const Tfsdp& t1,
                                                          const Tfsdp& t2) {
  std::vector<TerminalContribution> out;
  struct Frame {
    int node;
    double reach;
    int s1, s2;
  };
  std::vector<Frame> stack = {{Game::root(), 1.0, 0, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const GameNode& n = game.nodes[f.node];
    if (n.kind == NodeKind::kTerminal) {
      out.push_back({f.reach * n.payoff, f.s1, f.s2});
    } else if (n.kind == NodeKind::kChance) {
      for (int c : n.children) stack.push_back({c, f.reach * game.nodes[c].prob, f.s1, f.s2});
    } else {
      for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
        Frame next{n.children[a], f.reach, f.s1, f.s2};
        if (n.player == 1) {
          next.s1 = t1.sequence(t1.infoset_decision[n.infoset], a);
        } else {
          next.s2 = t2.sequence(t2.infoset_decision[n.infoset], a);
        }
        stack.push_back(next);
      }
    }
  }
  return out;
}

// Memoizes terminal contributions per (s1, s2) pair. Pairs come out sorted,
// and the contributions of one pair are summed in walk order.
inline std::vector<TerminalContribution> MergeTerminals(std::vector<TerminalContribution> terminals) {
  std::stable_sort(terminals.begin(), terminals.end(), [](const auto& a, const auto& b) {
    return std::pair(a.s1, a.s2) < std::pair(b.s1, b.s2);
  });
  std::vector<TerminalContribution> out;
  for (const auto& z : terminals) {
    if (!out.empty() && out.back().s1 == z.s1 && out.back().s2 == z.s2) {
      out.back().weight += z.weight;
    } else {
      out.push_back(z);
    }
  }
  return out;
}

// Player 1's expected value of the sequence-form profile (x1, x2).
inline double ScalarExpectedValue(const std::vector<TerminalContribution>& terminals,
                                  const std::vector<double>& x1, const std::vector<double>& x2) {
  double value = 0.0;
  for (const auto& z : terminals) value += z.weight * x1[z.s1] * x2[z.s2];
  return value;
}

// Utility vectors for both players: u1 = U x2 and u2 = -Uᵀ x1, accumulated
// terminal by terminal.
inline std::pair<std::vector<double>, std::vector<double>> ScalarUtilities(
    const std::vector<TerminalContribution>& terminals, int n1, int n2,
    const std::vector<double>& x1, const std::vector<double>& x2) {
  std::vector<double> u1(n1, 0.0), u2(n2, 0.0);
  for (const auto& z : terminals) {
    u1[z.s1] += z.weight * x2[z.s2];
    u2[z.s2] += z.weight * x1[z.s1];
  }
  for (double& v : u2) v = -v;
  return {u1, u2};
}

struct BestResponse {
  double value = 0.0;
  // Pure sequence-form strategy attaining `value`.
  std::vector<double> strategy;
};

// max over the sequence-form polytope of xᵀ gradient: maximize over actions at
// decision points and sum over signals at observation points, bottom-up.
inline BestResponse ScalarBestResponse(const Tfsdp& t, std::span<const double> gradient) {
  internal::CheckSize(gradient.size(), t.num_sequences(), "best response gradient");
  std::vector<double> v(t.num_nodes(), 0.0);
  std::vector<int> choice(t.num_decisions(), 0);
  for (int p = t.num_nodes() - 1; p >= 0; --p) {
    if (t.kind[p] == PointKind::kDecision) {
      const int j = t.node_decision[p];
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < t.num_actions[j]; ++a) {
        const int s = t.sequence(j, a);
        const double value = gradient[s] + v[t.sequence_node[s]];
        if (value > best) {
          best = value;
          choice[j] = a;
        }
      }
      v[p] = best;
    } else if (t.kind[p] == PointKind::kObservation) {
      double sum = 0.0;
      for (int c = 0; c < t.num_children[p]; ++c) sum += v[t.child_begin[p] + c];
      v[p] = sum;
    }
  }
  BestResponse br;
  br.value = gradient[kEmptySequence] + v[t.root()];
  br.strategy.assign(t.num_sequences(), 0.0);
  br.strategy[kEmptySequence] = 1.0;
  for (int j = 0; j < t.num_decisions(); ++j) {
    const double reach = br.strategy[t.parent_sequence[j]];
    br.strategy[t.sequence(j, choice[j])] = reach;
  }
  return br;
}

// Lockstep reference for the two-player driver: same update schedule as the
// sparse solver, utilities from the terminal list instead of the payoff
// matrix.
class ScalarSolver {
 public:
  ScalarSolver(const Game& game, SolverConfig config)
      : t1_(BuildTfsdp(game, 1)),
        t2_(BuildTfsdp(game, 2)),
        config_(config),
        cfr1_(t1_, config),
        cfr2_(t2_, config),
        terminals_(MergeTerminals(CollectTerminals(game, t1_, t2_))) {
    prediction1_.assign(t1_.num_sequences(), 0.0);
    prediction2_.assign(t2_.num_sequences(), 0.0);
  }

  ScalarSolver(const ScalarSolver&) = delete;
  ScalarSolver& operator=(const ScalarSolver&) = delete;

  // Runs one full iteration and returns (x1, x2) of that iteration.
  std::pair<std::vector<double>, std::vector<double>> Iterate() {
    const int n1 = t1_.num_sequences(), n2 = t2_.num_sequences();
    std::vector<double> x1, x2;
    if (config_.mode == UpdateMode::kSimultaneous) {
      cfr1_.set_t(t_);
      cfr2_.set_t(t_);
      x1 = Next(cfr1_, prediction1_);
      x2 = Next(cfr2_, prediction2_);
      auto [u1, u2] = ScalarUtilities(terminals_, n1, n2, x1, x2);
      cfr1_.ObserveUtility(u1);
      cfr2_.ObserveUtility(u2);
      prediction1_ = std::move(u1);
      prediction2_ = std::move(u2);
    } else {
      cfr1_.set_t(t_);
      x1 = Next(cfr1_, prediction1_);
      if (t_ > 1) {
        cfr2_.set_t(t_ - 1);
        auto u2 = ScalarUtilities(terminals_, n1, n2, x1, x2_prev_).second;
        cfr2_.ObserveUtility(u2);
        prediction2_ = std::move(u2);
      }
      cfr2_.set_t(t_);
      x2 = Next(cfr2_, prediction2_);
      auto u1 = ScalarUtilities(terminals_, n1, n2, x1, x2).first;
      cfr1_.ObserveUtility(u1);
      prediction1_ = std::move(u1);
      x2_prev_ = x2;
    }
    ++t_;
    return {x1, x2};
  }

  const Tfsdp& tfsdp(int player) const { return player == 1 ? t1_ : t2_; }
  const ScalarCfr& cfr(int player) const { return player == 1 ? cfr1_ : cfr2_; }
  const std::vector<TerminalContribution>& terminals() const { return terminals_; }

 private:
  std::vector<double> Next(ScalarCfr& cfr, const std::vector<double>& prediction) {
    return IsPredictive(config_.variant) ? cfr.NextStrategy(prediction) : cfr.NextStrategy();
  }

  Tfsdp t1_, t2_;
  SolverConfig config_;
  ScalarCfr cfr1_, cfr2_;
  std::vector<TerminalContribution> terminals_;
  std::vector<double> prediction1_, prediction2_;
  std::vector<double> x2_prev_;
  int64_t t_ = 1;
};

}  // namespace seqcfr
