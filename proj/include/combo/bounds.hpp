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

#ifndef COMBO_BOUNDS_HPP_
#define COMBO_BOUNDS_HPP_

#include <cstddef>

#include "combo/linalg.hpp"

namespace combo {

struct BoundReport {
  std::size_t spark_value = 0;
  bool spark_assumed = false;  // generic m + 1 used instead of enumeration
  std::size_t rank_y = 0;
  std::size_t max_recoverable_k = 0;
};

// Smallest number of linearly dependent columns of A (n + 1 when every
// column subset is independent). Enumerates subsets, so n is capped at 20
// (TooLargeError). A zero column raises DegenerateColumnError.
std::size_t spark_bruteforce(const RealMatrix& a);

// Largest row sparsity for which Y = A X has a unique solution:
// floor((spark + rank(Y) - 1) / 2).
std::size_t deterministic_bound(std::size_t spark_value, std::size_t rank_y);

// Largest k <= m with k <= deterministic_bound(m + 1, min(k, r)): the
// sparsity limit for a generic m-row sensing matrix and r generic
// measurement vectors.
std::size_t generic_recovery_limit(std::size_t m, std::size_t r);

// Spark by enumeration when n <= 20, otherwise the generic value m + 1.
BoundReport bound_report(const RealMatrix& a, const RealMatrix& y);

// Nonzero count of vec(S) after an ideal QR boost versus the k * r of plain
// concatenation.
struct SparsityBudget {
  std::size_t k = 0;
  std::size_t r = 0;
  std::size_t total_boosted = 0;
  std::size_t total_naive = 0;
  double average_boosted = 0.0;
  double average_naive = 0.0;
};

SparsityBudget sparsity_budget(std::size_t k, std::size_t r);

// Smallest eps with (1 - eps) |v| <= |A v| <= (1 + eps) |v| for every
// k-sparse v. Columns must be unit norm; limited to n <= 16, k <= 4.
double rip_constant_bruteforce(const RealMatrix& a, std::size_t k);

enum class MatrixNorm { kFrobenius, kSpectral };

// ||X - X_hat|| <= rel_tol ||X||. For X = 0 the test is ||X_hat|| <= rel_tol.
bool success(const RealMatrix& x, const RealMatrix& x_hat,
             double rel_tol = 1e-5, MatrixNorm norm = MatrixNorm::kFrobenius);

}  // namespace combo

#endif  // COMBO_BOUNDS_HPP_
