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

#ifndef COMBO_LINALG_HPP_
#define COMBO_LINALG_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace combo {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Sorted, duplicate-free set of row or column indices (0-based).
using IndexSet = std::vector<Index>;

// Throws DimensionError if `m` is empty or holds a NaN/Inf entry.
void require_finite(const RealMatrix& m, std::string_view what);

struct QrFactors {
  RealMatrix q;  // r x r, orthonormal
  RealMatrix r;  // r x k, upper trapezoidal (exact zeros below the diagonal)
};

// Householder QR of an arbitrary r x k matrix. Rank deficiency is fine.
QrFactors qr_decompose(const RealMatrix& k);

struct LeastSquaresResult {
  RealMatrix solution;  // s x r
  Index rank = 0;
  bool rank_deficient = false;
};

// Minimum-norm least-squares solution of A Z = B.
LeastSquaresResult least_squares_solve(const RealMatrix& a,
                                       const RealMatrix& b);

inline constexpr double kDefaultRankTolerance = 1e-10;

// Number of singular values above rel_tol times the largest one.
Index numerical_rank(const RealMatrix& m,
                     double rel_tol = kDefaultRankTolerance);

// Columns of `a` selected by `cols`, in the given order.
RealMatrix select_columns(const RealMatrix& a, std::span<const Index> cols);

// Column-stacking vectorisation and its inverse.
RealVector vec(const RealMatrix& m);
RealMatrix unvec(const RealVector& v, Index rows, Index cols);

// Applies the block-diagonal operator (I_r kron A) to s without forming it;
// r is inferred from s.size() / A.cols().
RealVector kron_identity_apply(const RealMatrix& a, const RealVector& s);

// Dense (I_r kron A). Only for small problems; prefer kron_identity_apply.
RealMatrix kron_identity_dense(const RealMatrix& a, Index r);

}  // namespace combo

#endif  // COMBO_LINALG_HPP_
