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

#include "combo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <tuple>

#include "combo/bounds.hpp"

namespace combo {

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kSomp:
      return "somp";
    case Algorithm::kRembo:
      return "rembo";
    case Algorithm::kNaiveConcat:
      return "naivecat";
    case Algorithm::kCombo:
      return "combo";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const Algorithm algo : {Algorithm::kSomp, Algorithm::kRembo,
                               Algorithm::kNaiveConcat, Algorithm::kCombo}) {
    if (algorithm_name(algo) == name) return algo;
  }
  return std::nullopt;
}

RngStream algorithm_stream(const MmvInstance& inst, Algorithm algo) {
  return RngStream(inst.seed, 1 + static_cast<std::uint64_t>(algo));
}

RecoveryResult run_algorithm(Algorithm algo, const MmvInstance& inst,
                             MmvAlgoConfig cfg) {
  const MmvProblem prob = inst.problem();
  RngStream rng = algorithm_stream(inst, algo);
  switch (algo) {
    case Algorithm::kSomp:
      if (!cfg.k_known) cfg.k_known = inst.k;
      return somp(prob, cfg);
    case Algorithm::kRembo:
      if (!cfg.k_known) cfg.k_known = inst.k;
      return rembo(prob, cfg, rng);
    case Algorithm::kNaiveConcat:
      return naive_concat(prob, cfg);
    case Algorithm::kCombo:
      return combo(prob, cfg, rng);
  }
  throw std::invalid_argument("run_algorithm: unknown algorithm");
}

std::uint64_t trial_stream_id(std::uint64_t master_seed, std::size_t r,
                              std::size_t k, std::size_t trial) {
  return derive_stream_id(master_seed, {r, k, trial});
}

void validate(const SweepConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1) throw std::invalid_argument("sweep: m, n must be >= 1");
  if (cfg.r_list.empty() ||
      std::any_of(cfg.r_list.begin(), cfg.r_list.end(),
                  [](std::size_t r) { return r < 1; })) {
    throw std::invalid_argument("sweep: r_list must be non-empty with r >= 1");
  }
  if (cfg.k_min > cfg.k_max || cfg.k_max > std::min(cfg.m, cfg.n)) {
    throw std::invalid_argument("sweep: need k_min <= k_max <= min(m, n)");
  }
  if (cfg.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (cfg.algorithms.empty()) throw std::invalid_argument("sweep: no algorithms");
}

std::vector<TrialRecord> run_sweep(const SweepConfig& cfg,
                                   std::vector<std::string>* diagnostics) {
  validate(cfg);
  struct Item {
    Algorithm algo;
    std::size_t r, k, trial;
  };
  std::vector<Item> items;
  for (const Algorithm algo : cfg.algorithms) {
    for (const std::size_t r : cfg.r_list) {
      for (std::size_t k = cfg.k_min; k <= cfg.k_max; ++k) {
        for (std::size_t t = 0; t < cfg.trials; ++t) items.push_back({algo, r, k, t});
      }
    }
  }

  std::vector<TrialRecord> records(items.size());
  std::vector<std::string> notes(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const Item& item = items[i];
      TrialRecord& rec = records[i];
      rec.algorithm = std::string(algorithm_name(item.algo));
      rec.m = cfg.m;
      rec.n = cfg.n;
      rec.r = item.r;
      rec.k = item.k;
      rec.trial = item.trial;
      try {
        RngStream rng(cfg.master_seed,
                      trial_stream_id(cfg.master_seed, item.r, item.k, item.trial));
        const MmvInstance inst =
            gen_instance(static_cast<Index>(cfg.m), static_cast<Index>(cfg.n),
                         item.k, static_cast<Index>(item.r), rng);
        const auto found = cfg.overrides.find(item.algo);
        const MmvAlgoConfig algo_cfg =
            found != cfg.overrides.end() ? found->second : MmvAlgoConfig{};
        const RecoveryResult res = run_algorithm(item.algo, inst, algo_cfg);
        rec.success = success(inst.x, res.x_hat);
        rec.boosts_used = res.boosts_used;
        if (cfg.record_runtime) {
          rec.runtime_ms =
              std::chrono::duration<double, std::milli>(res.runtime).count();
        }
      } catch (const std::exception& e) {
        rec.success = false;
        notes[i] = rec.algorithm + " r=" + std::to_string(item.r) +
                   " k=" + std::to_string(item.k) +
                   " trial=" + std::to_string(item.trial) + ": " + e.what();
      }
    }
  };

  std::size_t workers = cfg.worker_count;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, items.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    const TrialRecord& a = records[lhs];
    const TrialRecord& b = records[rhs];
    return std::tie(a.algorithm, a.r, a.k, a.trial) <
           std::tie(b.algorithm, b.r, b.k, b.trial);
  });
  std::vector<TrialRecord> sorted;
  sorted.reserve(records.size());
  for (const std::size_t i : order) {
    sorted.push_back(std::move(records[i]));
    if (diagnostics != nullptr && !notes[i].empty()) {
      diagnostics->push_back(std::move(notes[i]));
    }
  }
  return sorted;
}

std::vector<PhaseCurve> aggregate(const std::vector<TrialRecord>& records) {
  using Key = std::tuple<std::string, std::size_t, std::size_t, std::size_t>;
  std::map<Key, std::map<std::size_t, PhasePoint>> groups;
  for (const TrialRecord& rec : records) {
    PhasePoint& pt = groups[{rec.algorithm, rec.r, rec.m, rec.n}][rec.k];
    pt.k = rec.k;
    ++pt.trials;
    if (rec.success) ++pt.successes;
  }
  std::vector<PhaseCurve> out;
  for (auto& [key, by_k] : groups) {
    PhaseCurve curve;
    std::tie(curve.algorithm, curve.r, curve.m, curve.n) = key;
    for (auto& [k, pt] : by_k) {
      pt.rate = static_cast<double>(pt.successes) / static_cast<double>(pt.trials);
      pt.bound_k = deterministic_bound(curve.m + 1, std::min(k, curve.r));
      curve.points.push_back(pt);
    }
    out.push_back(std::move(curve));
  }
  return out;
}

double mean_rate(const PhaseCurve& curve) {
  if (curve.points.empty()) return 0.0;
  double total = 0.0;
  for (const PhasePoint& pt : curve.points) total += pt.rate;
  return total / static_cast<double>(curve.points.size());
}

}  // namespace combo
