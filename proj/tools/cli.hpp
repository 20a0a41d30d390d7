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

// The `seqcfr` command line: solve, bench and info. RunCli is the whole
// program minus main(), so tests can drive it in-process.

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqcfr/seqcfr.hpp"

namespace seqcfr::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kInternal = 4 };

// Bad flags or flag values that parsed but make no sense together.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::vector<std::string> SplitList(const std::string& text, char sep = ',') {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

template <typename T>
T ParseNumber(const std::string& text, const std::string& what) {
  T value{};
  if (!CLI::detail::lexical_cast(text, value)) {
    throw UsageError("bad value for " + what + ": '" + text + "'");
  }
  return value;
}

// "random:depth=6,branching=3,merge=0.5,seed=1". A missing seed falls back
// to `default_seed`.
inline RandomGameParams ParseRandomSpec(const std::string& body, uint64_t default_seed) {
  RandomGameParams p;
  p.depth = 6;
  p.branching = 3;
  p.infoset_merge_rate = 0.5;
  p.seed = default_seed;
  for (const std::string& kv : SplitList(body)) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("random game parameter without '=': " + kv);
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "depth") {
      p.depth = ParseNumber<int>(value, key);
    } else if (key == "branching") {
      p.branching = ParseNumber<int>(value, key);
    } else if (key == "merge") {
      p.infoset_merge_rate = ParseNumber<double>(value, key);
    } else if (key == "seed") {
      p.seed = ParseNumber<uint64_t>(value, key);
    } else {
      throw UsageError("unknown random game parameter: " + key);
    }
  }
  return p;
}

// Built-in name, "random:..." generator parameters, or a game file path
// (optionally prefixed with "file:").
inline Game LoadGameSpec(const std::string& spec, uint64_t seed) {
  if (spec == "kuhn") return KuhnPoker();
  if (spec == "leduc") return LeducPoker();
  if (spec == "matching_pennies") return MatchingPennies();
  if (spec == "rps") return RockPaperScissors();
  if (spec == "random") return RandomGame(ParseRandomSpec("", seed));
  if (spec.rfind("random:", 0) == 0) return RandomGame(ParseRandomSpec(spec.substr(7), seed));
  if (spec.rfind("file:", 0) == 0) return LoadGameFile(spec.substr(5));
  return LoadGameFile(spec);
}

// "log" gives 1, 2, 5, 10, 20, 50, ... up to `limit`; "every:N" gives N, 2N,
// ...; anything else is a comma-separated list of iterations.
inline std::vector<int64_t> ParseCheckpoints(const std::string& spec, int64_t limit) {
  std::vector<int64_t> out;
  if (spec == "log") {
    for (int64_t scale = 1; scale <= limit && scale > 0; scale *= 10) {
      for (int64_t m : {1, 2, 5}) {
        if (m * scale <= limit) out.push_back(m * scale);
      }
      if (scale > limit / 10) break;
    }
  } else if (spec.rfind("every:", 0) == 0) {
    const auto step = ParseNumber<int64_t>(spec.substr(6), "checkpoint step");
    if (step <= 0) throw UsageError("checkpoint step must be positive");
    for (int64_t i = step; i <= limit; i += step) out.push_back(i);
  } else {
    for (const std::string& item : SplitList(spec)) {
      const auto it = ParseNumber<int64_t>(item, "checkpoint");
      if (it <= 0) throw UsageError("checkpoints must be positive iterations");
      out.push_back(it);
    }
  }
  if (out.empty()) throw UsageError("checkpoint schedule is empty");
  return out;
}

inline UpdateMode ParseMode(const std::string& s) {
  if (s == "sim") return UpdateMode::kSimultaneous;
  if (s == "alt") return UpdateMode::kAlternating;
  throw UsageError("mode must be sim or alt");
}

inline Backend MakeBackend(const std::string& name, int workers) {
  if (name == "serial") return Backend::Serial();
  if (name == "parallel") {
    if (workers < 1) throw UsageError("workers must be at least 1");
    return Backend::Parallel(workers);
  }
  throw UsageError("backend must be serial or parallel");
}

struct SolverFlags {
  std::string variant = "cfr";
  std::optional<double> alpha, beta, gamma;
  std::optional<std::string> mode;

  void Register(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "cfr, cfr+, dcfr, pcfr or pcfr+")->capture_default_str();
    cmd->add_option("--alpha", alpha, "DCFR positive-regret exponent (inf allowed)");
    cmd->add_option("--beta", beta, "DCFR negative-regret exponent (-inf allowed)");
    cmd->add_option("--gamma", gamma, "average weight exponent (default per variant)");
    cmd->add_option("--mode", mode, "sim or alt (default per variant)");
  }

  SolverConfig Build() const {
    const auto v = ParseVariant(variant);
    if (!v) throw UsageError("unknown variant: " + variant);
    SolverConfig c = SolverConfig::Defaults(*v);
    if (alpha) c.alpha = *alpha;
    if (beta) c.beta = *beta;
    if (gamma) c.gamma = *gamma;
    if (mode) c.mode = ParseMode(*mode);
    try {
      c.Validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

struct SolveCommand {
  std::string game;
  SolverFlags solver;
  std::optional<int64_t> iters;
  std::optional<double> seconds;
  std::string backend = "serial";
  int workers = Backend::DefaultWorkers();
  std::string checkpoints = "log";
  uint64_t seed = 0;
  std::string out;
  std::string strategy;

  int Run(std::ostream& stdout_stream, std::ostream& stderr_stream) const {
    if (!iters && !seconds) throw UsageError("give --iters and/or --seconds");
    if (iters && *iters <= 0) throw UsageError("--iters must be positive");
    if (seconds && !(*seconds > 0.0)) throw UsageError("--seconds must be positive");
    const SolverConfig config = solver.Build();
    const auto schedule = ParseCheckpoints(checkpoints, iters.value_or(int64_t{1} << 40));
    Backend be = MakeBackend(backend, workers);
    const Game g = LoadGameSpec(game, seed);

    const RunResult result = seqcfr::Run(g, config, RunBudget{iters, seconds}, schedule, be);

    std::ofstream file;
    std::ostream* csv = &stdout_stream;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw IoError("cannot write " + out);
      csv = &file;
    }
    WriteConvergenceCsv(*csv, result.records);

    const std::string strategy_path =
        !strategy.empty() ? strategy : (out.empty() ? "" : out + ".strategy.jsonl");
    if (!strategy_path.empty()) {
      std::ofstream sf(strategy_path);
      if (!sf) throw IoError("cannot write " + strategy_path);
      const GameBundle bundle = GameBundle::Build(g);
      WriteStrategy(sf, bundle.t1, result.average1, bundle.t2, result.average2);
    }

    const ConvergenceRecord& last = result.records.back();
    std::ostream& summary = out.empty() ? stderr_stream : stdout_stream;
    summary << "game=" << g.name << " variant=" << VariantName(config.variant)
            << " mode=" << UpdateModeName(config.mode) << " iterations=" << last.iteration
            << " exploitability=" << FormatDouble(last.exploitability)
            << " seconds=" << FormatDouble(last.seconds) << '\n';
    return kOk;
  }
};

struct BenchCommand {
  std::string sizes;
  std::string backends = "serial,parallel";
  int workers = Backend::DefaultWorkers();
  int iters = 8;
  int warmup = 2;
  SolverFlags solver;
  uint64_t seed = 0;
  double merge = 0.5;
  std::string out;

  int Run(std::ostream& stdout_stream) const {
    std::vector<int64_t> targets;
    for (const std::string& s : SplitList(sizes)) {
      const auto v = static_cast<int64_t>(ParseNumber<double>(s, "size"));
      if (v < 1) throw UsageError("sizes must be positive");
      targets.push_back(v);
    }
    const auto names = SplitList(backends);
    if (targets.empty() || names.empty()) throw UsageError("empty sweep: give --sizes and --backends");
    if (iters < 8) throw UsageError("--iters must be at least 8");
    if (warmup < 0) throw UsageError("--warmup must be non-negative");
    const SolverConfig config = solver.Build();
    for (const auto& n : names) MakeBackend(n, workers);

    std::ofstream file;
    std::ostream* csv = &stdout_stream;
    if (!out.empty()) {
      file.open(out);
      if (!file) throw IoError("cannot write " + out);
      csv = &file;
    }
    *csv << kBenchCsvHeader << '\n';
    for (int64_t target : targets) {
      const Game g = RandomGame(RandomGameForSize(target, seed, merge));
      std::optional<double> serial_seconds;
      for (const auto& name : names) {
        const BenchResult r = BenchmarkSolver(g, config, MakeBackend(name, workers), iters, warmup);
        if (name == "serial") serial_seconds = r.mean_seconds;
        *csv << target << ',' << r.nodes << ',' << r.tree_nodes << ',' << r.backend << ','
             << r.workers << ',' << r.iterations << ',' << FormatDouble(r.mean_seconds) << ','
             << FormatDouble(r.stderr_seconds) << ',' << r.work_per_iteration << ','
             << r.state_bytes << ',';
        if (serial_seconds && r.mean_seconds > 0.0) *csv << FormatDouble(*serial_seconds / r.mean_seconds);
        *csv << '\n';
      }
    }
    return kOk;
  }
};

struct InfoCommand {
  std::string game;
  uint64_t seed = 0;
  bool dump = false;

  int Run(std::ostream& os) const {
    const Game g = LoadGameSpec(game, seed);
    const GameBundle bundle = GameBundle::Build(g);
    os << "game: " << g.name << '\n';
    os << "game tree nodes: " << g.num_nodes() << '\n';
    os << "terminals: " << g.num_terminals() << '\n';
    os << "payoff nonzeros: " << bundle.payoff.nnz() << '\n';
    for (int p = 1; p <= 2; ++p) {
      const Tfsdp& t = bundle.tfsdp(p);
      os << "player " << p << ": |P|=" << t.num_nodes() << " |J|=" << t.num_decisions()
         << " |Sigma|=" << t.num_sequences() << " k=" << t.height << " B=" << t.degree << '\n';
    }
    if (dump) {
      for (int p = 1; p <= 2; ++p) {
        os << "tfsdp player " << p << '\n';
        DumpTfsdp(bundle.tfsdp(p), os);
      }
    }
    return kOk;
  }
};

inline int RunCli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                  std::ostream& err = std::cerr) {
  CLI::App app{"Sequence-form CFR solvers over sparse linear algebra", "seqcfr"};
  app.require_subcommand(1);

  SolveCommand solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run a solver and log exploitability as CSV");
  solve_cmd->add_option("--game", solve.game, "kuhn, leduc, matching_pennies, rps, random:..., or a file")
      ->required();
  solve.solver.Register(solve_cmd);
  solve_cmd->add_option("--iters", solve.iters, "iteration budget");
  solve_cmd->add_option("--seconds", solve.seconds, "wall-clock budget");
  solve_cmd->add_option("--backend", solve.backend, "serial or parallel")->capture_default_str();
  solve_cmd->add_option("--workers", solve.workers, "parallel worker count")->capture_default_str();
  solve_cmd->add_option("--checkpoints", solve.checkpoints, "log, every:N, or a list")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "seed for generated games")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "CSV path (stdout if absent)");
  solve_cmd->add_option("--strategy", solve.strategy, "average strategy path (default <out>.strategy.jsonl)");

  BenchCommand bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time iterations over random games by size");
  bench_cmd->add_option("--sizes", bench.sizes, "target |P1|+|P2| list, e.g. 1e3,1e4");
  bench_cmd->add_option("--backends", bench.backends, "list of serial/parallel")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "parallel worker count")->capture_default_str();
  bench_cmd->add_option("--iters", bench.iters, "timed iterations")->capture_default_str();
  bench_cmd->add_option("--warmup", bench.warmup, "untimed iterations")->capture_default_str();
  bench.solver.Register(bench_cmd);
  bench_cmd->add_option("--seed", bench.seed, "game seed")->capture_default_str();
  bench_cmd->add_option("--merge", bench.merge, "infoset merge rate")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV path (stdout if absent)");

  InfoCommand info;
  CLI::App* info_cmd = app.add_subcommand("info", "print game and decision-process sizes");
  info_cmd->add_option("--game", info.game, "game source")->required();
  info_cmd->add_option("--seed", info.seed, "seed for generated games")->capture_default_str();
  info_cmd->add_flag("--dump-tfsdp", info.dump, "list every decision-process node");

  std::vector<const char*> argv = {"seqcfr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return solve.Run(out, err);
    if (*bench_cmd) return bench.Run(out);
    return info.Run(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kData;
  } catch (const ValidationError& e) {
    err << "invalid game: " << e.what() << '\n';
    return kData;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kData;
  } catch (const DimensionError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const NonFiniteError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    // Generator and solver parameter checks.
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace seqcfr::cli
