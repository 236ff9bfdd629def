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

#ifndef COMBO_MMV_HPP_
#define COMBO_MMV_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "combo/linalg.hpp"
#include "combo/rng.hpp"
#include "combo/smv.hpp"

namespace combo {

// Y = A X with X jointly row-sparse.
struct MmvProblem {
  RealMatrix a;  // m x n
  RealMatrix y;  // m x r
};

// Throws DimensionError on a malformed problem.
void validate(const MmvProblem& prob);

struct RecoveryResult {
  RealMatrix x_hat;  // n x r; rows outside `support` are exactly zero
  IndexSet support;  // ascending, |support| <= m
  std::size_t boosts_used = 0;
  std::size_t smv_solves = 0;
  bool converged = false;
  std::chrono::nanoseconds runtime{0};

  // S-OMP trace: atoms in selection order and ||R_t||_F after each step.
  std::vector<Index> selection;
  std::vector<double> residual_history;
  // CoMBo trace: |Lambda| after each boost.
  std::vector<std::size_t> support_size_history;
  std::vector<std::string> notes;
};

inline constexpr std::size_t kRemboDefaultMaxIter = 20;
inline constexpr std::size_t kComboDefaultMaxIter = 5;

struct MmvAlgoConfig {
  double eps = 1e-5;
  // Boost budget; unset means 20 for ReMBo and 5 for CoMBo.
  std::optional<std::size_t> max_iter;
  double p_norm = 2.0;  // S-OMP atom score, 1 <= p <= 2
  std::optional<std::size_t> k_known;
  // Row of A_Lambda^+ Y counts as nonzero above this fraction of the max.
  double row_nz_rel_tol = 1e-6;
  // CoMBo: only accept a smaller support if it does not worsen the fit.
  bool guard_residual = false;
  // Solve the concatenated system as one (I kron A) problem instead of r
  // independent column problems. Same answer, much slower.
  bool monolithic_concat = false;
  BpConfig bp;
};

// Throws std::invalid_argument when eps <= 0 or p_norm is outside [1, 2].
void validate(const MmvAlgoConfig& cfg);

// Any single-vector solver with basis-pursuit semantics.
using SmvSolver =
    std::function<SmvSolution(const RealMatrix& a, const RealVector& y)>;

// basis_pursuit bound to a configuration.
SmvSolver make_basis_pursuit(const BpConfig& cfg = {});

// Rows in `support` set to A_support^+ Y (minimum-norm least squares), all
// other rows zero. Requires |support| <= m.
RealMatrix restrict_and_solve(const MmvProblem& prob, const IndexSet& support);

// Simultaneous OMP: greedily adds the atom maximising ||a_i^T R||_p and
// re-projects Y off the selected span. Stops on ||R||_F < eps ||Y||_F,
// |Lambda| = k_known, or |Lambda| = m.
RecoveryResult somp(const MmvProblem& prob, const MmvAlgoConfig& cfg);

// Reduce-and-boost: solves A x = Y w for random unit w until the solution
// has at most k_known nonzeros and fits to eps. Requires cfg.k_known.
RecoveryResult rembo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng, const SmvSolver& smv);
RecoveryResult rembo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng);

// Concatenation without boosting: one pass of the CoMBo support step with
// Q = I.
RecoveryResult naive_concat(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                            const SmvSolver& smv);
RecoveryResult naive_concat(const MmvProblem& prob, const MmvAlgoConfig& cfg);

// Concatenate-and-boost. For each boost draws a Haar Q, solves
// (I kron A) vec(S) = vec(Y Q), keeps the m rows of S with the largest
// l2 norms, prunes them to the nonzero rows of A_Lambda^+ Y and accepts the
// result when it is no larger than the current support.
RecoveryResult combo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng, const SmvSolver& smv);
RecoveryResult combo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng);

// Solves the concatenated system (I_r kron A) vec(S) = vec(Z) for every
// column of Z. Column-wise unless `monolithic`; returns S (n x r).
RealMatrix solve_concatenated(const RealMatrix& a, const RealMatrix& z,
                              const SmvSolver& smv, bool monolithic,
                              std::size_t* solves = nullptr);

// Indices of the `count` rows with the largest l2 norm, ascending. Ties go
// to the smaller index.
IndexSet largest_rows(const RealMatrix& s, std::size_t count);

// Rows whose l2 norm exceeds rel_tol times the largest row norm.
IndexSet nonzero_rows(const RealMatrix& z, double rel_tol);

}  // namespace combo

#endif  // COMBO_MMV_HPP_
