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

#include "combo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "combo/errors.hpp"

namespace combo {
namespace {

// Calls visit(subset) for each size-k subset of {0..n-1} in lexicographic
// order until it returns true. Returns whether any call returned true.
template <typename Visit>
bool for_each_subset(Index n, std::size_t k, Visit&& visit) {
  if (k == 0 || static_cast<Index>(k) > n) return false;
  IndexSet subset(k);
  for (std::size_t j = 0; j < k; ++j) subset[j] = static_cast<Index>(j);
  while (true) {
    if (visit(static_cast<const IndexSet&>(subset))) return true;
    std::size_t pos = k;
    while (pos > 0 && subset[pos - 1] == n - static_cast<Index>(k - pos + 1)) {
      --pos;
    }
    if (pos == 0) return false;
    ++subset[pos - 1];
    for (std::size_t j = pos; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

double spectral_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<RealMatrix>(m).singularValues()(0);
}

}  // namespace

std::size_t spark_bruteforce(const RealMatrix& a) {
  require_finite(a, "spark_bruteforce");
  const Index n = a.cols();
  if (n > 20) {
    throw TooLargeError("spark_bruteforce: n > 20; assume the generic spark m + 1");
  }
  for (Index j = 0; j < n; ++j) {
    if (a.col(j).squaredNorm() == 0.0) {
      throw DegenerateColumnError("spark_bruteforce: column " +
                                  std::to_string(j) + " is zero");
    }
  }
  const std::size_t top =
      static_cast<std::size_t>(std::min<Index>(a.rows() + 1, n));
  for (std::size_t size = 2; size <= top; ++size) {
    const bool dependent = for_each_subset(n, size, [&](const IndexSet& s) {
      return numerical_rank(select_columns(a, s)) < static_cast<Index>(size);
    });
    if (dependent) return size;
  }
  return static_cast<std::size_t>(n) + 1;
}

std::size_t deterministic_bound(std::size_t spark_value, std::size_t rank_y) {
  if (spark_value < 2) {
    throw std::invalid_argument("deterministic_bound: spark must be >= 2");
  }
  return (spark_value + rank_y - 1) / 2;
}

std::size_t generic_recovery_limit(std::size_t m, std::size_t r) {
  std::size_t limit = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    if (k <= deterministic_bound(m + 1, std::min(k, r))) limit = k;
  }
  return limit;
}

BoundReport bound_report(const RealMatrix& a, const RealMatrix& y) {
  require_finite(a, "bound_report");
  if (y.rows() != a.rows()) {
    throw DimensionError("bound_report: A and Y row counts differ");
  }
  BoundReport out;
  if (a.cols() <= 20) {
    out.spark_value = spark_bruteforce(a);
  } else {
    out.spark_value = static_cast<std::size_t>(a.rows()) + 1;
    out.spark_assumed = true;
  }
  out.rank_y = static_cast<std::size_t>(numerical_rank(y));
  out.max_recoverable_k = deterministic_bound(out.spark_value, out.rank_y);
  return out;
}

SparsityBudget sparsity_budget(std::size_t k, std::size_t r) {
  if (k < 1 || r < 1) {
    throw std::invalid_argument("sparsity_budget: k and r must be >= 1");
  }
  SparsityBudget out;
  out.k = k;
  out.r = r;
  // r(k - (r-1)/2) written so the halving is exact: r(r-1) is even.
  out.total_boosted = r <= k ? r * k - r * (r - 1) / 2 : k * (k + 1) / 2;
  out.total_naive = k * r;
  out.average_boosted =
      static_cast<double>(out.total_boosted) / static_cast<double>(r);
  out.average_naive = static_cast<double>(out.total_naive) / static_cast<double>(r);
  return out;
}

double rip_constant_bruteforce(const RealMatrix& a, std::size_t k) {
  require_finite(a, "rip_constant_bruteforce");
  const Index n = a.cols();
  if (n > 16 || k > 4) {
    throw TooLargeError("rip_constant_bruteforce: limited to n <= 16, k <= 4");
  }
  if (k < 1 || static_cast<Index>(k) > n) {
    throw DimensionError("rip_constant_bruteforce: need 1 <= k <= n");
  }
  for (Index j = 0; j < n; ++j) {
    if (std::abs(a.col(j).norm() - 1.0) > 1e-8) {
      throw std::invalid_argument("rip_constant_bruteforce: columns must be unit norm");
    }
  }
  double eps = 0.0;
  for_each_subset(n, k, [&](const IndexSet& s) {
    const RealMatrix sub = select_columns(a, s);
    const Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sub.transpose() * sub,
                                                        Eigen::EigenvaluesOnly);
    const double lo = std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
    const double hi = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
    eps = std::max({eps, 1.0 - lo, hi - 1.0});
    return false;
  });
  return eps;
}

bool success(const RealMatrix& x, const RealMatrix& x_hat, double rel_tol,
             MatrixNorm norm) {
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols()) {
    throw DimensionError("success: shape mismatch");
  }
  auto measure = [norm](const RealMatrix& m) {
    return norm == MatrixNorm::kFrobenius ? m.norm() : spectral_norm(m);
  };
  const double ref = measure(x);
  if (ref == 0.0) return measure(x_hat) <= rel_tol;
  return measure(x - x_hat) <= rel_tol * ref;
}

}  // namespace combo
