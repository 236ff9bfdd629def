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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "combo/bounds.hpp"
#include "combo/errors.hpp"
#include "combo/rng.hpp"

using namespace combo;

namespace {

RealMatrix unit_columns(RealMatrix a) {
  a.colwise().normalize();
  return a;
}

// Smallest s with a rank-deficient s-subset, via bitmask enumeration.
std::size_t spark_oracle(const RealMatrix& a) {
  const Index n = a.cols();
  std::size_t best = static_cast<std::size_t>(n) + 1;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (static_cast<std::size_t>(size) >= best) continue;
    std::vector<Index> cols;
    for (Index j = 0; j < n; ++j) {
      if (mask & (1u << j)) cols.push_back(j);
    }
    Eigen::JacobiSVD<RealMatrix> svd(select_columns(a, cols));
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;
    }
    if (rank < size) best = static_cast<std::size_t>(size);
  }
  return best;
}

double pair_deviation(const RealMatrix& a, Index i, Index j) {
  const RealMatrix sub = select_columns(a, IndexSet{i, j});
  Eigen::JacobiSVD<RealMatrix> svd(sub);
  const auto& sv = svd.singularValues();
  return std::max(1.0 - sv(sv.size() - 1), sv(0) - 1.0);
}

}  // namespace

TEST_CASE("spark small cases") {
  RealMatrix a(2, 3);
  a << 1, 0, 1, 0, 1, 1;
  CHECK(spark_bruteforce(a) == 3);
  CHECK(spark_bruteforce(RealMatrix::Identity(3, 3)) == 4);

  RealMatrix dup(3, 4);
  dup << 1, 2, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1;  // column 1 = 2 * column 0
  CHECK(spark_bruteforce(dup) == 2);
  CHECK(spark_bruteforce(dup) == spark_oracle(dup));
}

TEST_CASE("spark of Gaussian matrices is generic") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 0);
    CHECK(spark_bruteforce(random_gaussian(6, 10, rng)) == 7);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed, 1);
    RealMatrix a = random_gaussian(4, 7, rng);
    a.col(5) = a.col(0) - 0.5 * a.col(2);
    CHECK(spark_bruteforce(a) == spark_oracle(a));
  }
}

TEST_CASE("spark errors") {
  RealMatrix zero_col = RealMatrix::Identity(3, 3);
  zero_col.col(1).setZero();
  CHECK_THROWS_AS(spark_bruteforce(zero_col), DegenerateColumnError);
  RngStream rng(1, 0);
  CHECK_THROWS_AS(spark_bruteforce(random_gaussian(5, 21, rng)), TooLargeError);
}

TEST_CASE("deterministic bound") {
  CHECK(deterministic_bound(21, 1) == 10);
  CHECK(deterministic_bound(21, 2) == 11);
  CHECK(deterministic_bound(21, 8) == 14);
  CHECK(deterministic_bound(21, 16) == 18);
  CHECK(deterministic_bound(2, 0) == 0);
  CHECK_THROWS(deterministic_bound(1, 3));
  for (std::size_t s = 2; s < 30; ++s) {
    for (std::size_t r = 0; r < 30; ++r) {
      CHECK(deterministic_bound(s, r) <= deterministic_bound(s + 1, r));
      CHECK(deterministic_bound(s, r) <= deterministic_bound(s, r + 1));
      CHECK(deterministic_bound(s, r) == (s + r - 1) / 2);
    }
  }
}

TEST_CASE("generic recovery limit at m = 20") {
  CHECK(generic_recovery_limit(20, 1) == 10);
  CHECK(generic_recovery_limit(20, 2) == 11);
  CHECK(generic_recovery_limit(20, 8) == 14);
  CHECK(generic_recovery_limit(20, 16) == 18);
  CHECK(generic_recovery_limit(20, 40) == 20);
}

TEST_CASE("bound report") {
  RngStream rng(3, 0);
  const RealMatrix a = random_gaussian(6, 10, rng);
  const RealMatrix y = a.leftCols(3) * random_gaussian(3, 2, rng);
  const BoundReport small = bound_report(a, y);
  CHECK_FALSE(small.spark_assumed);
  CHECK(small.spark_value == 7);
  CHECK(small.rank_y == 2);
  CHECK(small.max_recoverable_k == 4);

  const RealMatrix wide = random_gaussian(20, 30, rng);
  const BoundReport big = bound_report(wide, wide * random_gaussian(30, 8, rng));
  CHECK(big.spark_assumed);
  CHECK(big.spark_value == 21);
  CHECK(big.rank_y == 8);
  CHECK(big.max_recoverable_k == 14);
}

TEST_CASE("sparsity budget") {
  const SparsityBudget one = sparsity_budget(10, 1);
  CHECK(one.total_boosted == 10);
  CHECK(one.total_naive == 10);
  const SparsityBudget four = sparsity_budget(10, 4);
  CHECK(four.total_boosted == 34);
  CHECK(four.total_naive == 40);
  CHECK(four.average_boosted == doctest::Approx(8.5));
  CHECK(four.average_naive == doctest::Approx(10.0));
  const SparsityBudget twelve = sparsity_budget(10, 12);
  CHECK(twelve.total_boosted == 55);
  CHECK(twelve.total_naive == 120);

  for (std::size_t r = 1; r <= 20; ++r) {
    const SparsityBudget b = sparsity_budget(10, r);
    CHECK(b.total_boosted <= b.total_naive);
    if (r >= 10) CHECK(b.total_boosted == 55);
  }
  for (std::size_t k = 1; k <= 15; ++k) {
    for (std::size_t r = 1; r <= 15; ++r) {
      const SparsityBudget b = sparsity_budget(k, r);
      // Count nonzeros of a generic r x k upper-trapezoidal R directly.
      std::size_t count = 0;
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < k; ++j) ++count;
      }
      CHECK(b.total_boosted == count);
      if (r == 1) CHECK(b.total_boosted == b.total_naive);
      if (r >= 2 && k >= 2) CHECK(b.total_boosted < b.total_naive);
    }
  }
  CHECK_THROWS(sparsity_budget(0, 3));
}

TEST_CASE("restricted isometry constant") {
  const RealMatrix eye = RealMatrix::Identity(6, 6);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(rip_constant_bruteforce(eye, k) == doctest::Approx(0.0));

  RngStream rng(11, 0);
  const RealMatrix a = unit_columns(random_gaussian(8, 12, rng));
  CHECK(rip_constant_bruteforce(a, 1) == doctest::Approx(0.0).epsilon(1e-12));

  double worst = 0.0;
  for (Index i = 0; i < 12; ++i) {
    for (Index j = i + 1; j < 12; ++j) worst = std::max(worst, pair_deviation(a, i, j));
  }
  const double delta2 = rip_constant_bruteforce(a, 2);
  CHECK(delta2 == doctest::Approx(worst).epsilon(1e-10));
  CHECK(delta2 >= pair_deviation(a, 0, 1));
  CHECK(delta2 >= pair_deviation(a, 3, 7));

  double prev = 0.0;
  for (std::size_t k = 1; k <= 4; ++k) {
    const double d = rip_constant_bruteforce(a, k);
    CHECK(d >= prev - 1e-12);
    prev = d;
  }
  CHECK_THROWS_AS(rip_constant_bruteforce(a, 5), TooLargeError);
  CHECK_THROWS(rip_constant_bruteforce(random_gaussian(8, 12, rng), 2));
}

TEST_CASE("success criterion") {
  RngStream rng(2, 0);
  const RealMatrix x = random_gaussian(10, 3, rng);
  CHECK(success(x, x));
  CHECK_FALSE(success(x, RealMatrix::Zero(10, 3)));

  RealMatrix e = random_gaussian(10, 3, rng);
  e *= 2e-5 * x.norm() / e.norm();
  CHECK_FALSE(success(x, x + e));
  e *= 0.25;
  CHECK(success(x, x + e));

  const RealMatrix zero = RealMatrix::Zero(4, 2);
  CHECK(success(zero, zero));
  CHECK_FALSE(success(zero, RealMatrix::Constant(4, 2, 1e-3)));

  RealMatrix rank_one = x.col(0) * RealVector::Ones(3).transpose();
  RealMatrix perturbed = rank_one;
  perturbed(0, 0) += 1.5e-5 * rank_one.norm();
  CHECK(success(rank_one, perturbed, 1e-5, MatrixNorm::kFrobenius) ==
        success(rank_one, perturbed, 1e-5, MatrixNorm::kSpectral));

  CHECK_THROWS_AS(success(x, RealMatrix::Zero(3, 10)), DimensionError);
}
