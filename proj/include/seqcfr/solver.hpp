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
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seqcfr/config.hpp"
#include "seqcfr/game.hpp"
#include "seqcfr/metrics.hpp"
#include "seqcfr/operators.hpp"
#include "seqcfr/sparse.hpp"
#include "seqcfr/tfsdp.hpp"

namespace seqcfr {

// Per-player solver state. `regrets` and `behavioral` live over Σ+, the
// average accumulator over Σ. The remaining vectors are scratch space reused
// across iterations.
struct RegretState {
  Vector regrets;
  // Behavioral strategy of the latest NextStrategy; uniform before the first.
  Vector behavioral;
  int64_t t = 1;
  double gamma = 0.0;
  Vector average_accum;
  double average_weight = 0.0;

  // Scratch.
  Vector per_node_y, per_node_w, per_node_v;  // |P|
  Vector positive, denominator, q, product, spread, backup;  // |Σ+|
  Vector per_decision;  // |J|
  Vector strategy;      // |Σ|

  static RegretState ForOperators(const OperatorSet& ops, double gamma = 0.0) {
    const size_t plus = ops.num_nonempty_sequences();
    RegretState s;
    s.regrets.assign(plus, 0.0);
    s.behavioral = ops.uniform;
    s.gamma = gamma;
    s.average_accum.assign(ops.num_sequences, 0.0);
    for (Vector* v : {&s.per_node_y, &s.per_node_w, &s.per_node_v}) v->assign(ops.num_nodes, 0.0);
    for (Vector* v : {&s.positive, &s.denominator, &s.q, &s.product, &s.spread, &s.backup}) {
      v->assign(plus, 0.0);
    }
    s.per_decision.assign(ops.num_decisions, 0.0);
    s.strategy.assign(ops.num_sequences, 0.0);
    return s;
  }

  // Normalized weighted average of the recorded strategies.
  Vector AverageStrategy() const {
    Vector avg(average_accum.size(), 0.0);
    if (average_weight > 0.0) {
      for (size_t i = 0; i < avg.size(); ++i) avg[i] = average_accum[i] / average_weight;
    }
    return avg;
  }

  size_t bytes() const {
    size_t n = 0;
    for (const Vector* v : {&regrets, &behavioral, &average_accum, &per_node_y, &per_node_w,
                            &per_node_v, &positive, &denominator, &q, &product, &spread, &backup,
                            &per_decision, &strategy}) {
      n += v->capacity() * sizeof(double);
    }
    return n;
  }
};

namespace internal {

inline void CheckState(const RegretState& s, const OperatorSet& ops) {
  CheckSize(s.regrets.size(), ops.num_nonempty_sequences(), "regret vector");
  CheckSize(s.per_node_y.size(), ops.num_nodes, "regret state scratch");
}

// b = r^+ ⊘ Cᵀ(C r^+) with the uniform fallback, then the top-down level
// sweep y += L(d)ᵀ y from y = e_root, then x = Aᵀ y. Leaves b in
// state.behavioral and x in state.strategy.
inline void ComputeStrategy(RegretState& s, OperatorSet& ops, Backend& backend) {
  CheckState(s, ops);
  if (!AllFinite(s.regrets)) throw NonFiniteError("non-finite regrets");
  PositivePartInto(s.regrets, s.positive, backend);
  SpmvInto(ops.C.matrix(), s.positive, s.per_decision, backend);
  SpmvInto(ops.C.transpose(), s.per_decision, s.denominator, backend);
  HadamardDivOrDefaultInto(s.positive, s.denominator, ops.uniform, s.behavioral, backend);

  RefreshLevels(ops, s.behavioral);
  std::span<double> y = s.per_node_y;
  std::fill(y.begin(), y.end(), 0.0);
  y[ops.root] = 1.0;
  for (const LevelMatrix& level : ops.levels) {
    SpmvInto(level.transpose(), level.Rows<double>(y), level.Cols<double>(y), backend, true);
  }
  SpmvInto(ops.A.transpose(), y, s.strategy, backend);
}

// w = A u; v accumulated bottom-up with v += L(d) w + L(d) v; q = Bᵀ(w + v);
// r += q - Cᵀ(C(b ⊙ q)).
inline void UpdateRegrets(RegretState& s, std::span<const double> u, OperatorSet& ops,
                          Backend& backend) {
  CheckState(s, ops);
  CheckSize(u.size(), ops.num_sequences, "utility vector");
  if (!AllFinite(u)) throw NonFiniteError("non-finite utilities");
  std::span<double> w = s.per_node_w;
  std::span<double> v = s.per_node_v;
  // Level weights must reflect the behavioral strategy being observed.
  RefreshLevels(ops, s.behavioral);
  SpmvInto(ops.A.matrix(), u, w, backend);
  std::fill(v.begin(), v.end(), 0.0);
  for (auto it = ops.levels.rbegin(); it != ops.levels.rend(); ++it) {
    const LevelMatrix& level = *it;
    SpmvInto(level.matrix(), level.Cols<double>(w), level.Rows<double>(v), backend, true);
    SpmvInto(level.matrix(), level.Cols<double>(v), level.Rows<double>(v), backend, true);
  }
  // w + v, reusing y's storage.
  AddInto(w, v, s.per_node_y, backend);
  SpmvInto(ops.B.transpose(), s.per_node_y, s.q, backend);
  HadamardMulInto(s.behavioral, s.q, s.product, backend);
  SpmvInto(ops.C.matrix(), s.product, s.per_decision, backend);
  SpmvInto(ops.C.transpose(), s.per_decision, s.spread, backend);
  AddInto(s.regrets, s.q, s.regrets, backend);
  SubtractInto(s.regrets, s.spread, s.regrets, backend);
}

inline void RecordAverage(RegretState& s, Backend& backend) {
  const double weight = AveragingWeight(s.t, s.gamma);
  AxpyInto(weight, s.strategy, s.average_accum, s.average_accum, backend);
  s.average_weight += weight;
}

}  // namespace internal

// Regret-matching strategy for iteration t in sequence form. Also stores the
// behavioral strategy for the following observe step and adds x to the
// average with weight t^gamma.
inline Vector NextStrategy(RegretState& s, OperatorSet& ops, Backend& backend) {
  internal::ComputeStrategy(s, ops, backend);
  internal::RecordAverage(s, backend);
  return s.strategy;
}

// Plain CFR regret update for utility u over Σ, using the behavioral
// strategy of the latest NextStrategy.
inline void ObserveUtility(RegretState& s, std::span<const double> u, OperatorSet& ops,
                           Backend& backend) {
  internal::UpdateRegrets(s, u, ops, backend);
}

// CFR+: the CFR update followed by flooring regrets at zero.
inline void ObserveUtilityPlus(RegretState& s, std::span<const double> u, OperatorSet& ops,
                               Backend& backend) {
  internal::UpdateRegrets(s, u, ops, backend);
  PositivePartInto(s.regrets, s.regrets, backend);
}

// DCFR: the CFR update, then positive regrets scale by t^α/(t^α+1) and
// negative ones by t^β/(t^β+1) for the current t.
inline void ObserveUtilityDcfr(RegretState& s, std::span<const double> u, OperatorSet& ops,
                               Backend& backend, double alpha, double beta) {
  internal::UpdateRegrets(s, u, ops, backend);
  const double pos = DiscountFactor(s.t, alpha);
  const double neg = DiscountFactor(s.t, beta);
  Elementwise(std::span<const double>(s.regrets), s.regrets, backend, [pos, neg](double r) {
    return r > 0.0 ? r * pos : (r < 0.0 ? r * neg : r);
  });
}

// Predictive step: with the regrets backed up, observe the prediction m
// using the previous behavioral strategy (flooring when `floor`), take the
// strategy of the predicted regrets, then restore the regrets.
inline Vector NextStrategyPredictive(RegretState& s, std::span<const double> m, OperatorSet& ops,
                                     Backend& backend, bool floor) {
  internal::CheckSize(m.size(), ops.num_sequences, "prediction vector");
  std::copy(s.regrets.begin(), s.regrets.end(), s.backup.begin());
  internal::UpdateRegrets(s, m, ops, backend);
  if (floor) PositivePartInto(s.regrets, s.regrets, backend);
  internal::ComputeStrategy(s, ops, backend);
  std::swap(s.regrets, s.backup);
  internal::RecordAverage(s, backend);
  return s.strategy;
}

// One player's regret minimizer: operators, state and the variant's
// observe rule.
class RegretMinimizer {
 public:
  RegretMinimizer(OperatorSet ops, const SolverConfig& config)
      : ops_(std::move(ops)),
        config_(config),
        state_(RegretState::ForOperators(ops_, config.gamma)),
        prediction_(ops_.num_sequences, 0.0) {}

  Vector NextStrategy(Backend& backend) {
    if (IsPredictive(config_.variant)) {
      return NextStrategyPredictive(state_, prediction_, ops_, backend,
                                    config_.variant == Variant::kPcfrPlus);
    }
    return seqcfr::NextStrategy(state_, ops_, backend);
  }

  void ObserveUtility(std::span<const double> u, Backend& backend) {
    switch (config_.variant) {
      case Variant::kCfr:
      case Variant::kPcfr:
        seqcfr::ObserveUtility(state_, u, ops_, backend);
        break;
      case Variant::kCfrPlus:
      case Variant::kPcfrPlus:
        ObserveUtilityPlus(state_, u, ops_, backend);
        break;
      case Variant::kDcfr:
        ObserveUtilityDcfr(state_, u, ops_, backend, config_.alpha, config_.beta);
        break;
    }
    // The next prediction is the utility just observed.
    if (IsPredictive(config_.variant)) std::copy(u.begin(), u.end(), prediction_.begin());
  }

  // Sequence form of the behavioral strategy built from zero regrets, with no
  // side effects on the state.
  Vector UniformStrategy(Backend& backend) {
    RegretState fresh = RegretState::ForOperators(ops_);
    internal::ComputeStrategy(fresh, ops_, backend);
    return fresh.strategy;
  }

  void set_t(int64_t t) { state_.t = t; }
  const RegretState& state() const { return state_; }
  RegretState& mutable_state() { return state_; }
  const OperatorSet& operators() const { return ops_; }
  OperatorSet& mutable_operators() { return ops_; }

  size_t bytes() const {
    return ops_.bytes() + state_.bytes() + prediction_.capacity() * sizeof(double);
  }

 private:
  OperatorSet ops_;
  SolverConfig config_;
  RegretState state_;
  Vector prediction_;
};

// Two-player driver. Simultaneous mode: both players produce strategies,
// then both observe (U x2 and -Uᵀ x1). Alternating mode: each player's t-th
// strategy is scored against the opponent's most recent one, so player 1's
// x1(t) observes U x2(t) and player 2's x2(t) observes -Uᵀ x1(t+1). Per
// iteration t that is: x1(t) = next1; player 2 observes its pending x2(t-1)
// against x1(t); x2(t) = next2; player 1 observes U x2(t). The shared clock t
// advances once per full iteration.
class Solver {
 public:
  Solver(const Game& game, const SolverConfig& config, Backend backend)
      : Solver(GameBundle::Build(game), config, std::move(backend)) {}

  Solver(GameBundle bundle, const SolverConfig& config, Backend backend)
      : bundle_(std::move(bundle)),
        config_(config),
        backend_(std::move(backend)),
        players_{RegretMinimizer(BuildOperators(bundle_.t1), config),
                 RegretMinimizer(BuildOperators(bundle_.t2), config)} {
    config_.Validate();
    u1_.assign(bundle_.t1.num_sequences(), 0.0);
    u2_.assign(bundle_.t2.num_sequences(), 0.0);
  }

  // Runs one full iteration.
  void Iterate() {
    const SparseOperator& U = bundle_.payoff;
    if (config_.mode == UpdateMode::kSimultaneous) {
      players_[0].set_t(t_);
      players_[1].set_t(t_);
      x1_ = players_[0].NextStrategy(backend_);
      x2_ = players_[1].NextStrategy(backend_);
      SpmvInto(U.matrix(), x2_, u1_, backend_);
      OpponentUtility();
      players_[0].ObserveUtility(u1_, backend_);
      players_[1].ObserveUtility(u2_, backend_);
    } else {
      players_[0].set_t(t_);
      x1_ = players_[0].NextStrategy(backend_);
      if (t_ > 1) {
        players_[1].set_t(t_ - 1);
        OpponentUtility();
        players_[1].ObserveUtility(u2_, backend_);
      }
      players_[1].set_t(t_);
      x2_ = players_[1].NextStrategy(backend_);
      SpmvInto(U.matrix(), x2_, u1_, backend_);
      players_[0].ObserveUtility(u1_, backend_);
    }
    ++t_;
  }

  // Completed iterations.
  int64_t iterations() const { return t_ - 1; }

  const Vector& current(int player) const { return player == 1 ? x1_ : x2_; }
  Vector average(int player) const { return players_[player - 1].state().AverageStrategy(); }
  const Vector& utility(int player) const { return player == 1 ? u1_ : u2_; }

  const GameBundle& bundle() const { return bundle_; }
  const RegretMinimizer& player(int p) const { return players_[p - 1]; }
  RegretMinimizer& mutable_player(int p) { return players_[p - 1]; }
  Backend& backend() { return backend_; }
  const SolverConfig& config() const { return config_; }

  // Bytes held by operators, payoff matrix, per-player state and the
  // driver's vectors.
  size_t StateBytes() const {
    size_t n = bundle_.payoff.bytes() + players_[0].bytes() + players_[1].bytes();
    for (const Vector* v : {&x1_, &x2_, &u1_, &u2_}) n += v->capacity() * sizeof(double);
    return n;
  }

 private:
  // u2 = -Uᵀ x1
  void OpponentUtility() {
    SpmvInto(bundle_.payoff.transpose(), x1_, u2_, backend_);
    ScaleInto(-1.0, u2_, u2_, backend_);
  }

  GameBundle bundle_;
  SolverConfig config_;
  Backend backend_;
  RegretMinimizer players_[2];
  Vector x1_, x2_, u1_, u2_;
  int64_t t_ = 1;
};

struct RunBudget {
  std::optional<int64_t> iterations;
  std::optional<double> seconds;
};

struct RunResult {
  Vector average1;
  Vector average2;
  std::vector<ConvergenceRecord> records;
};

// Solves `game` until the budget runs out, recording convergence at each
// checkpoint iteration and at the final iteration.
inline RunResult Run(const Game& game, const SolverConfig& config, const RunBudget& budget,
                     std::vector<int64_t> checkpoints, Backend backend = Backend::Serial()) {
  if (!budget.iterations && !budget.seconds) throw std::invalid_argument("no budget given");
  if (budget.iterations && *budget.iterations <= 0) {
    throw std::invalid_argument("iteration budget must be positive");
  }
  if (budget.seconds && !(*budget.seconds > 0.0)) {
    throw std::invalid_argument("time budget must be positive");
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Solver solver(game, config, std::move(backend));
  const uint64_t bytes = solver.StateBytes();
  const int64_t max_iters = budget.iterations.value_or(std::numeric_limits<int64_t>::max());
  double measured = 0.0;  // seconds spent iterating, excluding metrics

  RunResult result;
  auto record = [&] {
    ConvergenceRecord r;
    r.iteration = solver.iterations();
    r.seconds = measured;
    const Vector a1 = solver.average(1), a2 = solver.average(2);
    r.exploitability = Exploitability(solver.bundle(), a1, a2);
    r.current_exploitability = Exploitability(solver.bundle(), solver.current(1), solver.current(2));
    r.work = solver.backend().work();
    r.peak_bytes = bytes;
    result.records.push_back(r);
  };

  auto next_checkpoint = checkpoints.begin();
  while (solver.iterations() < max_iters) {
    const auto t0 = Clock::now();
    solver.Iterate();
    measured += std::chrono::duration<double>(Clock::now() - t0).count();
    while (next_checkpoint != checkpoints.end() && *next_checkpoint < solver.iterations()) {
      ++next_checkpoint;
    }
    const bool out_of_time =
        budget.seconds &&
        std::chrono::duration<double>(Clock::now() - start).count() >= *budget.seconds;
    const bool last = out_of_time || solver.iterations() >= max_iters;
    if (next_checkpoint != checkpoints.end() && *next_checkpoint == solver.iterations()) {
      record();
      ++next_checkpoint;
    } else if (last) {
      record();
    }
    if (last) break;
  }
  result.average1 = solver.average(1);
  result.average2 = solver.average(2);
  return result;
}

}  // namespace seqcfr
