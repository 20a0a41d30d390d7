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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqcfr/games.hpp"
#include "seqcfr/solver.hpp"

namespace seqcfr {

// Picks random-game parameters whose two decision processes together have
// roughly `target_nodes` nodes. Uses branching 3 and odd depths, where the
// last internal layer is a decision layer and |P1| + |P2| is close to half
// the tree size; successive odd depths differ by a factor of 9.
inline RandomGameParams RandomGameForSize(int64_t target_nodes, uint64_t seed,
                                          double infoset_merge_rate = 0.5) {
  if (target_nodes < 1) throw std::invalid_argument("target size must be positive");
  RandomGameParams best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int depth = 1; depth <= 19; depth += 2) {
    const double estimate = 0.5 * static_cast<double>(RandomGameNodeCount(depth, 3));
    const double gap = std::abs(std::log(estimate / static_cast<double>(target_nodes)));
    if (gap < best_gap) {
      best_gap = gap;
      best = RandomGameParams{depth, 3, infoset_merge_rate, seed};
    }
  }
  return best;
}

struct BenchResult {
  int64_t nodes = 0;       // |P1| + |P2|
  int64_t tree_nodes = 0;  // game tree
  int64_t payoff_nnz = 0;
  std::string backend;
  int workers = 1;
  int iterations = 0;
  double mean_seconds = 0.0;
  double stderr_seconds = 0.0;
  uint64_t work_per_iteration = 0;
  uint64_t state_bytes = 0;
};

inline constexpr const char* kBenchCsvHeader =
    "target,nodes,tree_nodes,backend,workers,iterations,mean_seconds,stderr_seconds,work,"
    "peak_bytes,speedup";

// Times `iterations` solver iterations after `warmup` untimed ones.
inline BenchResult BenchmarkSolver(const Game& game, const SolverConfig& config, Backend backend,
                                   int iterations = 8, int warmup = 2) {
  if (iterations < 2) throw std::invalid_argument("benchmark needs at least 2 timed iterations");
  Solver solver(game, config, std::move(backend));
  for (int i = 0; i < warmup; ++i) solver.Iterate();
  std::vector<double> times;
  const uint64_t work_before = solver.backend().work();
  for (int i = 0; i < iterations; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    solver.Iterate();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  BenchResult r;
  r.nodes = solver.bundle().total_nodes();
  r.tree_nodes = game.num_nodes();
  r.payoff_nnz = solver.bundle().payoff.nnz();
  r.backend = solver.backend().name();
  r.workers = solver.backend().workers();
  r.iterations = iterations;
  r.work_per_iteration = (solver.backend().work() - work_before) / iterations;
  r.state_bytes = solver.StateBytes();
  double sum = 0.0;
  for (double t : times) sum += t;
  r.mean_seconds = sum / iterations;
  double var = 0.0;
  for (double t : times) var += (t - r.mean_seconds) * (t - r.mean_seconds);
  var /= iterations - 1;
  r.stderr_seconds = std::sqrt(var / iterations);
  return r;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
inline LinearFit FitLinear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace seqcfr
