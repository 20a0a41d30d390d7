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
#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "seqcfr/game.hpp"
#include "seqcfr/operators.hpp"
#include "seqcfr/oracle.hpp"
#include "seqcfr/sparse.hpp"
#include "seqcfr/tfsdp.hpp"

namespace seqcfr {

// Both players' decision processes and the payoff matrix of one game.
struct GameBundle {
  Tfsdp t1;
  Tfsdp t2;
  SparseOperator payoff;

  static GameBundle Build(const Game& game) {
    GameBundle b{BuildTfsdp(game, 1), BuildTfsdp(game, 2), {}};
    b.payoff = SparseOperator(BuildPayoffMatrix(game, b.t1, b.t2));
    return b;
  }

  const Tfsdp& tfsdp(int player) const { return player == 1 ? t1 : t2; }
  int total_nodes() const { return t1.num_nodes() + t2.num_nodes(); }
};

// x1ᵀ U x2: player 1's expected value; player 2 receives the negation.
inline double ExpectedValue(const SparseMatrix& payoff, std::span<const double> x1,
                            std::span<const double> x2) {
  internal::CheckSize(x1.size(), payoff.rows(), "expected value x1");
  Backend serial = Backend::Serial();
  const Vector u1 = Spmv(payoff, x2, serial);
  double value = 0.0;
  for (size_t i = 0; i < u1.size(); ++i) value += x1[i] * u1[i];
  return value;
}

struct BestResponseGains {
  double br1 = 0.0;    // max over x1' of x1'ᵀ U x2
  double br2 = 0.0;    // max over x2' of -x1ᵀ U x2'
  double value = 0.0;  // x1ᵀ U x2

  // What each player gains by deviating to its best response.
  double gain1() const { return br1 - value; }
  double gain2() const { return br2 + value; }
  double nash_conv() const { return br1 + br2; }
  double exploitability() const { return nash_conv() / 2.0; }
};

inline BestResponseGains ComputeBestResponses(const GameBundle& bundle, std::span<const double> x1,
                                              std::span<const double> x2) {
  Backend serial = Backend::Serial();
  const Vector g1 = Spmv(bundle.payoff, x2, serial);
  Vector g2 = SpmvT(bundle.payoff, x1, serial);
  for (double& v : g2) v = -v;
  BestResponseGains gains;
  gains.br1 = ScalarBestResponse(bundle.t1, g1).value;
  gains.br2 = ScalarBestResponse(bundle.t2, g2).value;
  for (size_t i = 0; i < g1.size(); ++i) gains.value += x1[i] * g1[i];
  return gains;
}

// Mean best-response gain (NashConv / 2). Zero exactly at a Nash equilibrium.
inline double Exploitability(const GameBundle& bundle, std::span<const double> x1,
                             std::span<const double> x2) {
  return ComputeBestResponses(bundle, x1, x2).exploitability();
}

struct ConvergenceRecord {
  int64_t iteration = 0;
  double seconds = 0.0;
  // Of the normalized average profile.
  double exploitability = 0.0;
  // Of the last iterate.
  double current_exploitability = 0.0;
  uint64_t work = 0;
  uint64_t peak_bytes = 0;
};

inline constexpr const char* kConvergenceCsvHeader =
    "iteration,seconds,exploitability,current_exploitability,work,peak_bytes";

inline std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void WriteConvergenceCsv(std::ostream& os, std::span<const ConvergenceRecord> records) {
  os << kConvergenceCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.iteration << ',' << FormatDouble(r.seconds) << ',' << FormatDouble(r.exploitability)
       << ',' << FormatDouble(r.current_exploitability) << ',' << r.work << ',' << r.peak_bytes
       << '\n';
  }
}

}  // namespace seqcfr
