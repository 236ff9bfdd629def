// Copyright 2026 The combo Authors. All Rights Reserved.
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

// Command-line front end: instance generation, single solves, Monte-Carlo
// sweeps, plotting and bound tables.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "combo/bounds.hpp"
#include "combo/csv.hpp"
#include "combo/errors.hpp"
#include "combo/instance.hpp"
#include "combo/mmv.hpp"
#include "combo/svg.hpp"
#include "combo/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoConvergence = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenArgs {
  std::size_t m = 20, n = 30, k = 5, r = 4, trial = 0;
  std::uint64_t seed = 1;
  std::string out;
};

struct SolveArgs {
  std::string instance, algo, out;
  std::optional<double> eps;
  std::optional<std::size_t> max_iter, k;
  double p = 2.0;
  bool guard_residual = false;
};

struct BenchArgs {
  std::size_t m = 20, n = 30, trials = 100, workers = 0;
  std::vector<std::size_t> r{1, 2, 8, 16};
  std::string k_range = "1:20";
  std::vector<std::string> algos{"somp", "rembo", "naivecat", "combo"};
  std::uint64_t seed = 1;
  std::string out, curves;
  bool full_trials = false, timing = false;
};

struct PlotArgs {
  std::string in, out, title = "Recovery rate";
  bool bound = false;
};

struct BoundsArgs {
  std::size_t m = 20, n = 30, r = 1, k_max = 20;
};

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const std::size_t k = std::stoul(text);
      return {k, k};
    }
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--k expects LO:HI, got '" + text + "'");
  }
}

combo::Algorithm require_algorithm(const std::string& name) {
  const auto algo = combo::parse_algorithm(name);
  if (!algo) throw UsageError("unknown algorithm '" + name + "'");
  return *algo;
}

int run_gen(const GenArgs& args) {
  combo::RngStream rng(args.seed,
                       combo::trial_stream_id(args.seed, args.r, args.k, args.trial));
  const combo::MmvInstance inst =
      combo::gen_instance(static_cast<combo::Index>(args.m),
                          static_cast<combo::Index>(args.n), args.k,
                          static_cast<combo::Index>(args.r), rng);
  if (args.out.empty()) {
    std::cout << combo::instance_to_json(inst);
  } else {
    combo::write_instance(inst, args.out);
  }
  return kExitOk;
}

int run_solve(const SolveArgs& args) {
  const combo::MmvInstance inst = combo::read_instance(args.instance);
  const combo::Algorithm algo = require_algorithm(args.algo);
  combo::MmvAlgoConfig cfg;
  if (args.eps) cfg.eps = *args.eps;
  cfg.max_iter = args.max_iter;
  cfg.k_known = args.k;
  cfg.p_norm = args.p;
  cfg.guard_residual = args.guard_residual;
  combo::validate(cfg);

  const combo::RecoveryResult res = combo::run_algorithm(algo, inst, cfg);
  nlohmann::json doc;
  doc["algorithm"] = combo::algorithm_name(algo);
  doc["support"] = res.support;
  doc["true_support"] = inst.support;
  doc["converged"] = res.converged;
  doc["success"] = combo::success(inst.x, res.x_hat);
  doc["boosts_used"] = res.boosts_used;
  doc["smv_solves"] = res.smv_solves;
  doc["runtime_ms"] = std::chrono::duration<double, std::milli>(res.runtime).count();
  doc["notes"] = res.notes;
  nlohmann::json rows = nlohmann::json::array();
  for (combo::Index i = 0; i < res.x_hat.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (combo::Index j = 0; j < res.x_hat.cols(); ++j) row.push_back(res.x_hat(i, j));
    rows.push_back(row);
  }
  doc["X_hat"] = rows;
  const std::string text = doc.dump(1) + "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out || !(out << text)) throw combo::IoError("cannot write '" + args.out + "'");
  }
  return res.converged ? kExitOk : kExitNoConvergence;
}

int run_bench(const BenchArgs& args) {
  combo::SweepConfig cfg;
  cfg.m = args.m;
  cfg.n = args.n;
  cfg.r_list = args.r;
  std::tie(cfg.k_min, cfg.k_max) = parse_k_range(args.k_range);
  cfg.trials = args.full_trials ? 500 : args.trials;
  cfg.algorithms.clear();
  for (const std::string& name : args.algos) cfg.algorithms.push_back(require_algorithm(name));
  cfg.master_seed = args.seed;
  cfg.worker_count = args.workers;
  cfg.record_runtime = args.timing;
  try {
    combo::validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<std::string> diagnostics;
  const auto records = combo::run_sweep(cfg, &diagnostics);
  for (const std::string& d : diagnostics) std::cerr << "warning: " << d << '\n';
  if (args.out.empty()) {
    combo::write_records_csv(records, std::cout);
  } else {
    combo::write_records_csv(records, args.out);
  }
  if (!args.curves.empty()) combo::write_curves_csv(combo::aggregate(records), args.curves);
  return kExitOk;
}

int run_plot(const PlotArgs& args) {
  std::vector<combo::PhaseCurve> curves;
  switch (combo::detect_csv_kind(args.in)) {
    case combo::CsvKind::kRecords:
      curves = combo::aggregate(combo::read_records_csv(args.in));
      break;
    case combo::CsvKind::kCurves:
      curves = combo::read_curves_csv(args.in);
      break;
    case combo::CsvKind::kUnknown:
      throw combo::ParseError(args.in + ":1: not a records or curves CSV", 1);
  }
  if (curves.empty()) throw UsageError("'" + args.in + "' holds no data rows");
  const std::string svg = combo::render_svg(curves, {args.bound, args.title});
  std::ofstream out(args.out, std::ios::binary);
  if (!out || !(out << svg)) throw combo::IoError("cannot write '" + args.out + "'");
  return kExitOk;
}

int run_bounds(const BoundsArgs& args) {
  if (args.m < 1 || args.n < 1 || args.r < 1) throw UsageError("m, n, r must be >= 1");
  const std::size_t spark = args.m + 1;
  std::printf("# uniqueness bound, generic spark = %zu (m=%zu, n=%zu, r=%zu)\n",
              spark, args.m, args.n, args.r);
  std::printf("%4s %8s %8s %10s\n", "k", "rank_Y", "max_k", "guaranteed");
  for (std::size_t k = 1; k <= args.k_max; ++k) {
    const std::size_t rank = std::min(k, args.r);
    const std::size_t bound = combo::deterministic_bound(spark, rank);
    std::printf("%4zu %8zu %8zu %10s\n", k, rank, bound, k <= bound ? "yes" : "no");
  }
  std::printf("# recovery limit: k <= %zu\n",
              combo::generic_recovery_limit(args.m, args.r));
  std::printf("\n# sparsity of vec(S), r=%zu\n", args.r);
  std::printf("%4s %14s %12s %16s %14s\n", "k", "total_boosted", "total_naive",
              "average_boosted", "average_naive");
  for (std::size_t k = 1; k <= args.k_max; ++k) {
    const auto b = combo::sparsity_budget(k, args.r);
    std::printf("%4zu %14zu %12zu %16.4f %14.4f\n", k, b.total_boosted, b.total_naive,
                b.average_boosted, b.average_naive);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint-sparse recovery: CoMBo and baselines"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a planted MMV instance (JSON)");
  gen_cmd->add_option("--m", gen.m, "Measurements")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Signal dimension")->capture_default_str();
  gen_cmd->add_option("--k", gen.k, "Row sparsity")->capture_default_str();
  gen_cmd->add_option("--r", gen.r, "Measurement vectors")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  gen_cmd->add_option("--trial", gen.trial, "Trial index (matches bench)")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (stdout if omitted)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run one algorithm on an instance");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--algo", solve.algo, "somp|rembo|naivecat|combo")->required();
  solve_cmd->add_option("--eps", solve.eps, "Residual tolerance (default 1e-5)");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Boost budget");
  solve_cmd->add_option("--k", solve.k, "Known sparsity");
  solve_cmd->add_option("--p", solve.p, "S-OMP row norm")->capture_default_str();
  solve_cmd->add_flag("--guard-residual", solve.guard_residual,
                      "CoMBo: reject supports that worsen the fit");
  solve_cmd->add_option("--out", solve.out, "Write the JSON result here");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo phase-transition sweep");
  bench_cmd->add_option("--m", bench.m)->capture_default_str();
  bench_cmd->add_option("--n", bench.n)->capture_default_str();
  bench_cmd->add_option("--r", bench.r, "Comma-separated r values")->delimiter(',');
  bench_cmd->add_option("--k", bench.k_range, "Sparsity range LO:HI")->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials)->capture_default_str();
  bench_cmd->add_flag("--full-trials", bench.full_trials, "Use 500 trials per cell");
  bench_cmd->add_option("--algos", bench.algos, "Comma-separated algorithms")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Records CSV (stdout if omitted)");
  bench_cmd->add_option("--curves", bench.curves, "Also write aggregated curves CSV");
  bench_cmd->add_flag("--timing", bench.timing,
                      "Record wall-clock runtime_ms (output no longer reproducible)");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render recovery curves as SVG");
  plot_cmd->add_option("--in", plot.in, "Records or curves CSV")->required();
  plot_cmd->add_option("--out", plot.out, "SVG file")->required();
  plot_cmd->add_flag("--bound", plot.bound, "Draw the deterministic recovery limits");
  plot_cmd->add_option("--title", plot.title)->capture_default_str();

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print bound and sparsity tables");
  bounds_cmd->add_option("--m", bounds.m)->capture_default_str();
  bounds_cmd->add_option("--n", bounds.n)->capture_default_str();
  bounds_cmd->add_option("--r", bounds.r)->capture_default_str();
  bounds_cmd->add_option("--k-max", bounds.k_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*bench_cmd) return run_bench(bench);
    if (*plot_cmd) return run_plot(plot);
    if (*bounds_cmd) return run_bounds(bounds);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const combo::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const combo::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
