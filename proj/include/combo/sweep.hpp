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

#ifndef COMBO_SWEEP_HPP_
#define COMBO_SWEEP_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "combo/instance.hpp"
#include "combo/mmv.hpp"

namespace combo {

enum class Algorithm { kSomp, kRembo, kNaiveConcat, kCombo };

// "somp", "rembo", "naivecat", "combo".
std::string_view algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// Stream used for an algorithm's own randomness on a given instance.
RngStream algorithm_stream(const MmvInstance& inst, Algorithm algo);

// Runs `algo` on the instance. S-OMP and ReMBo get k_known = inst.k when the
// config leaves it unset.
RecoveryResult run_algorithm(Algorithm algo, const MmvInstance& inst,
                             MmvAlgoConfig cfg);

// Stream id of the instance for one Monte-Carlo cell and trial.
std::uint64_t trial_stream_id(std::uint64_t master_seed, std::size_t r,
                              std::size_t k, std::size_t trial);

struct SweepConfig {
  std::size_t m = 20;
  std::size_t n = 30;
  std::vector<std::size_t> r_list{1, 2, 8, 16};
  std::size_t k_min = 1;
  std::size_t k_max = 20;
  std::size_t trials = 100;
  std::vector<Algorithm> algorithms{Algorithm::kSomp, Algorithm::kRembo,
                                    Algorithm::kNaiveConcat, Algorithm::kCombo};
  std::uint64_t master_seed = 1;
  std::map<Algorithm, MmvAlgoConfig> overrides;
  std::size_t worker_count = 1;  // 0 = hardware concurrency
  // Wall-clock timings make the output depend on the machine; off by
  // default, in which case runtime_ms is written as 0.
  bool record_runtime = false;
};

void validate(const SweepConfig& cfg);

struct TrialRecord {
  std::string algorithm;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
  bool success = false;
  double runtime_ms = 0.0;
  std::size_t boosts_used = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Every (algorithm, r, k, trial) cell, sorted by (algorithm, r, k, trial).
// Instances depend only on (master_seed, r, k, trial), so all algorithms in
// a cell see the same problem. Output is independent of worker_count.
// Failures inside a trial become success = false; their messages go to
// `diagnostics` when given.
std::vector<TrialRecord> run_sweep(const SweepConfig& cfg,
                                   std::vector<std::string>* diagnostics = nullptr);

struct PhasePoint {
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  std::size_t bound_k = 0;  // deterministic bound with spark m+1, rank min(k, r)

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct PhaseCurve {
  std::string algorithm;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<PhasePoint> points;  // ascending k

  friend bool operator==(const PhaseCurve&, const PhaseCurve&) = default;
};

// Success rate per k, grouped by (algorithm, m, n, r).
std::vector<PhaseCurve> aggregate(const std::vector<TrialRecord>& records);

// Mean success rate over the curve's points (normalised area under it).
double mean_rate(const PhaseCurve& curve);

}  // namespace combo

#endif  // COMBO_SWEEP_HPP_
