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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "seqcfr/seqcfr.hpp"
#include "testing/helpers.hpp"

// Heap audit: every global allocation carries a 16-byte header with its size
// so live and peak byte counts can be tracked.
namespace heap {

std::atomic<int64_t> live{0};
std::atomic<int64_t> peak{0};

void* Allocate(std::size_t n) {
  void* raw = std::malloc(n + 16);
  if (raw == nullptr) throw std::bad_alloc();
  *static_cast<std::size_t*>(raw) = n;
  const int64_t now = live.fetch_add(static_cast<int64_t>(n)) + static_cast<int64_t>(n);
  int64_t seen = peak.load();
  while (now > seen && !peak.compare_exchange_weak(seen, now)) {
  }
  return static_cast<char*>(raw) + 16;
}

void Release(void* p) {
  if (p == nullptr) return;
  char* raw = static_cast<char*>(p) - 16;
  live.fetch_sub(static_cast<int64_t>(*reinterpret_cast<std::size_t*>(raw)));
  std::free(raw);
}

void ResetPeak() { peak.store(live.load()); }

}  // namespace heap

void* operator new(std::size_t n) { return heap::Allocate(n); }
void* operator new[](std::size_t n) { return heap::Allocate(n); }
void* operator new(std::size_t n, const std::nothrow_t&) noexcept {
  try {
    return heap::Allocate(n);
  } catch (...) {
    return nullptr;
  }
}
void* operator new[](std::size_t n, const std::nothrow_t&) noexcept {
  try {
    return heap::Allocate(n);
  } catch (...) {
    return nullptr;
  }
}
void operator delete(void* p) noexcept { heap::Release(p); }
void operator delete[](void* p) noexcept { heap::Release(p); }
void operator delete(void* p, std::size_t) noexcept { heap::Release(p); }
void operator delete[](void* p, std::size_t) noexcept { heap::Release(p); }

namespace seqcfr {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void Report(bool pass, const std::string& name, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

constexpr Variant kVariants[] = {Variant::kCfr, Variant::kCfrPlus, Variant::kDcfr, Variant::kPcfr,
                                 Variant::kPcfrPlus};

void OracleEquivalenceAndPolytope() {
  const auto start = Clock::now();
  double worst = 0.0, worst_polytope = 0.0;
  int64_t checks = 0;
  std::string worst_case = "none";
  for (const Game& g : {KuhnPoker(), RandomGame(6, 3, 0.5, 1)}) {
    for (Variant v : kVariants) {
      for (UpdateMode mode : {UpdateMode::kSimultaneous, UpdateMode::kAlternating}) {
        SolverConfig config = SolverConfig::Defaults(v);
        config.mode = mode;
        Solver solver(g, config, Backend::Serial());
        ScalarSolver oracle(g, config);
        for (int i = 0; i < 200; ++i) {
          solver.Iterate();
          const auto [x1, x2] = oracle.Iterate();
          const double d = std::max(MaxAbsDiff(solver.current(1), x1), MaxAbsDiff(solver.current(2), x2));
          if (d > worst) {
            worst = d;
            worst_case = g.name + "/" + VariantName(v) + "/" + UpdateModeName(mode);
          }
          for (int p = 1; p <= 2; ++p) {
            const Tfsdp& t = solver.bundle().tfsdp(p);
            worst_polytope = std::max(worst_polytope, testing::PolytopeViolation(t, solver.current(p)));
            worst_polytope = std::max(worst_polytope, testing::PolytopeViolation(t, p == 1 ? x1 : x2));
            checks += 2;
          }
        }
      }
    }
  }
  const double seconds = Since(start);
  Report(worst <= 1e-10 && seconds <= 60.0, "oracle equivalence",
         "max |x - x_oracle| = " + Num(worst) + " (worst " + worst_case + "), 20 runs x 200 iterations in " +
             Num(seconds) + " s");
  Report(worst_polytope <= 1e-11 && checks >= 4000, "polytope invariants",
         std::to_string(checks) + " strategy checks, worst violation " + Num(worst_polytope));
}

void VariantIdentities() {
  const Game g = KuhnPoker();
  SolverConfig dcfr = SolverConfig::Defaults(Variant::kDcfr);
  dcfr.alpha = std::numeric_limits<double>::infinity();
  dcfr.beta = -std::numeric_limits<double>::infinity();
  const SolverConfig plus = SolverConfig::Defaults(Variant::kCfrPlus);
  Solver a(g, dcfr, Backend::Serial()), b(g, plus, Backend::Serial());
  double clamp = 0.0;
  for (int i = 0; i < 50; ++i) {
    a.Iterate();
    b.Iterate();
    clamp = std::max({clamp, MaxAbsDiff(a.current(1), b.current(1)), MaxAbsDiff(a.current(2), b.current(2))});
  }

  // Self-play where each predictive player always receives m = 0.
  const GameBundle bundle = GameBundle::Build(g);
  Backend backend = Backend::Serial();
  OperatorSet ops[2][2] = {{BuildOperators(bundle.t1), BuildOperators(bundle.t2)},
                           {BuildOperators(bundle.t1), BuildOperators(bundle.t2)}};
  RegretState cfr[2] = {RegretState::ForOperators(ops[0][0]), RegretState::ForOperators(ops[0][1])};
  RegretState pcfr[2] = {RegretState::ForOperators(ops[1][0]), RegretState::ForOperators(ops[1][1])};
  const Vector zero1(bundle.t1.num_sequences(), 0.0), zero2(bundle.t2.num_sequences(), 0.0);
  double predictive = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vector c1 = NextStrategy(cfr[0], ops[0][0], backend);
    const Vector c2 = NextStrategy(cfr[1], ops[0][1], backend);
    const Vector p1 = NextStrategyPredictive(pcfr[0], zero1, ops[1][0], backend, false);
    const Vector p2 = NextStrategyPredictive(pcfr[1], zero2, ops[1][1], backend, false);
    predictive = std::max({predictive, MaxAbsDiff(c1, p1), MaxAbsDiff(c2, p2)});
    Vector u1 = Spmv(bundle.payoff.matrix(), c2, backend);
    Vector u2 = Scale(-1.0, Spmv(bundle.payoff.transpose(), c1, backend), backend);
    ObserveUtility(cfr[0], u1, ops[0][0], backend);
    ObserveUtility(cfr[1], u2, ops[0][1], backend);
    u1 = Spmv(bundle.payoff.matrix(), p2, backend);
    u2 = Scale(-1.0, Spmv(bundle.payoff.transpose(), p1, backend), backend);
    ObserveUtility(pcfr[0], u1, ops[1][0], backend);
    ObserveUtility(pcfr[1], u2, ops[1][1], backend);
  }
  Report(clamp <= 1e-12 && predictive <= 1e-12, "variant identities",
         "DCFR(inf,-inf) vs CFR+ max diff " + Num(clamp) + "; PCFR(m=0) vs CFR max diff " +
             Num(predictive) + " over 50 Kuhn iterations");
}

void KuhnConvergence() {
  const auto start = Clock::now();
  const Game g = KuhnPoker();
  const RunResult r = Run(g, SolverConfig::Defaults(Variant::kCfrPlus), {10000, {}}, {100, 1000});
  const double seconds = Since(start);
  const GameBundle bundle = GameBundle::Build(g);
  const double value = ExpectedValue(bundle.payoff.matrix(), r.average1, r.average2);
  const auto brute = testing::BruteForceBestResponses(g, bundle.t1, r.average1, bundle.t2, r.average2);
  const double e = r.records.back().exploitability;
  const bool pass = e <= 1e-4 && std::abs(value + 1.0 / 18.0) <= 1e-3 &&
                    std::abs(brute.value - value) <= 1e-12 &&
                    std::abs(brute.exploitability() - e) <= 1e-12 && seconds <= 120.0;
  Report(pass, "CFR+ convergence on Kuhn",
         "exploitability " + Num(e) + " at 10000 iterations (enumeration " + Num(brute.exploitability()) +
             "), player-1 value " + Num(value) + " vs -1/18, " + Num(seconds) + " s");
}

double Relative(const Vector& a, const Vector& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-300});
    worst = std::max(worst, a[i] == b[i] ? 0.0 : std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

void BackendEquivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  Backend serial = Backend::Serial();
  Backend parallel = Backend::Parallel(8);
  parallel.set_grain(16);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 400), cols = 1 + static_cast<int>(rng() % 400);
    std::vector<Triplet> t;
    const double density = 0.001 + 0.05 * coin(rng);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (coin(rng) < density) t.push_back({r, c, u(rng)});
      }
    }
    const SparseMatrix m = SparseMatrix::FromTriplets(rows, cols, std::move(t));
    Vector x(cols), y(rows), z(rows);
    for (double& v : x) v = u(rng);
    for (double& v : y) v = u(rng);
    for (double& v : z) v = coin(rng) < 0.3 ? 0.0 : u(rng);
    switch (trial % 5) {
      case 0:
        worst = std::max(worst, Relative(Spmv(m, x, serial), Spmv(m, x, parallel)));
        break;
      case 1:
        worst = std::max(worst, Relative(SpmvT(m, y, serial), SpmvT(m, y, parallel)));
        break;
      case 2:
        worst = std::max(worst, Relative(HadamardDivOrDefault(y, z, y, serial),
                                         HadamardDivOrDefault(y, z, y, parallel)));
        break;
      case 3:
        worst = std::max(worst, Relative(Axpy(0.5, y, z, serial), Axpy(0.5, y, z, parallel)));
        break;
      case 4:
        worst = std::max(worst, Relative(PositivePart(HadamardMul(y, z, serial), serial),
                                         PositivePart(HadamardMul(y, z, parallel), parallel)));
        break;
    }
  }

  double trajectory = 0.0;
  for (const Game& g : {KuhnPoker(), LeducPoker()}) {
    for (Variant v : {Variant::kCfr, Variant::kPcfrPlus}) {
      std::vector<int64_t> checkpoints;
      for (int i = 10; i <= 200; i += 10) checkpoints.push_back(i);
      Backend par = Backend::Parallel(8);
      par.set_grain(16);
      const auto a = Run(g, SolverConfig::Defaults(v), {200, {}}, checkpoints, Backend::Serial());
      const auto b = Run(g, SolverConfig::Defaults(v), {200, {}}, checkpoints, par);
      for (size_t i = 0; i < a.records.size(); ++i) {
        trajectory = std::max(trajectory, std::abs(a.records[i].exploitability - b.records[i].exploitability));
      }
    }
  }
  Report(worst <= 1e-12 && trajectory <= 1e-9, "backend equivalence",
         "1000 random kernel cases, worst relative difference " + Num(worst) +
             "; Kuhn/Leduc exploitability trajectories differ by at most " + Num(trajectory));
}

struct SizePoint {
  int64_t target;
  double nodes;
  double work;
  double heap_bytes;
  double state_bytes;
};

std::vector<SizePoint> MeasureSizes(const std::vector<int64_t>& targets) {
  std::vector<SizePoint> points;
  for (int64_t target : targets) {
    const Game g = RandomGame(RandomGameForSize(target, 1));
    heap::ResetPeak();
    const int64_t before = heap::live.load();
    SizePoint p{target, 0, 0, 0, 0};
    {
      Solver solver(g, SolverConfig::Defaults(Variant::kPcfrPlus), Backend::Serial());
      solver.Iterate();
      const uint64_t w0 = solver.backend().work();
      solver.Iterate();
      solver.Iterate();
      p.work = static_cast<double>(solver.backend().work() - w0) / 2.0;
      p.nodes = solver.bundle().total_nodes();
      p.state_bytes = static_cast<double>(solver.StateBytes());
    }
    p.heap_bytes = static_cast<double>(heap::peak.load() - before);
    points.push_back(p);
  }
  return points;
}

void Linearity(const std::vector<SizePoint>& points) {
  std::vector<double> x, work, heap_bytes;
  std::string table;
  for (const auto& p : points) {
    x.push_back(p.nodes);
    work.push_back(p.work);
    heap_bytes.push_back(p.heap_bytes);
    table += " |P|=" + std::to_string(static_cast<int64_t>(p.nodes)) + ":" + Num(p.work) + "/" +
             Num(p.heap_bytes);
  }
  const LinearFit wf = FitLinear(x, work);
  const LinearFit sf = FitLinear(x, heap_bytes);
  Report(wf.r_squared >= 0.99, "work linearity",
         "work = " + Num(wf.slope) + "|P| + " + Num(wf.intercept) + ", R^2 = " + Num(wf.r_squared) +
             " (work/peak heap bytes per size:" + table + ")");
  Report(sf.r_squared >= 0.98, "space linearity",
         "peak heap = " + Num(sf.slope) + "|P| + " + Num(sf.intercept) + " bytes, R^2 = " +
             Num(sf.r_squared));
}

void ParallelSpeedup() {
  const int workers = std::max(8, Backend::DefaultWorkers());
  double speedup[2] = {0, 0};
  int64_t nodes[2] = {0, 0};
  const int64_t targets[2] = {10000, 1000000};
  for (int i = 0; i < 2; ++i) {
    const Game g = RandomGame(RandomGameForSize(targets[i], 1));
    const SolverConfig config = SolverConfig::Defaults(Variant::kCfr);
    const BenchResult s = BenchmarkSolver(g, config, Backend::Serial());
    const BenchResult p = BenchmarkSolver(g, config, Backend::Parallel(workers));
    speedup[i] = s.mean_seconds / p.mean_seconds;
    nodes[i] = s.nodes;
  }
  Report(speedup[1] >= 1.5 && speedup[1] > speedup[0], "parallel speedup",
         std::to_string(workers) + " workers on " + std::to_string(std::thread::hardware_concurrency()) +
             " hardware threads: speedup " + Num(speedup[0]) + "x at |P|=" + std::to_string(nodes[0]) +
             ", " + Num(speedup[1]) + "x at |P|=" + std::to_string(nodes[1]));
}

void ExploitabilityTrend() {
  namespace fs = std::filesystem;
  const fs::path csv = fs::temp_directory_path() / "seqcfr_acceptance_trend.csv";
  std::ostringstream out, err;
  const int code = cli::RunCli({"solve", "--game", "kuhn", "--variant", "cfr", "--iters", "1000",
                                "--checkpoints", "100,1000", "--out", csv.string(), "--strategy",
                                (fs::temp_directory_path() / "seqcfr_acceptance_trend.jsonl").string()},
                               out, err);
  std::map<int64_t, double> by_iteration;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string iteration, seconds, exploitability;
    std::getline(ls, iteration, ',');
    std::getline(ls, seconds, ',');
    std::getline(ls, exploitability, ',');
    by_iteration[std::stoll(iteration)] = std::stod(exploitability);
  }
  const bool pass = code == 0 && by_iteration.count(100) && by_iteration.count(1000) &&
                    by_iteration[1000] < by_iteration[100];
  Report(pass, "exploitability trend",
         code != 0 ? "CLI exit " + std::to_string(code) + ": " + err.str()
                   : "CFR on Kuhn via CSV: " + Num(by_iteration[100]) + " at 100, " +
                         Num(by_iteration[1000]) + " at 1000");
}

}  // namespace
}  // namespace seqcfr

int main() {
  using namespace seqcfr;
  OracleEquivalenceAndPolytope();
  VariantIdentities();
  KuhnConvergence();
  BackendEquivalence();
  Linearity(MeasureSizes({1000, 10000, 100000, 1000000}));
  ParallelSpeedup();
  ExploitabilityTrend();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
