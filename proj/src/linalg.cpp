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

#include "combo/linalg.hpp"

#include <cmath>
#include <string>

#include "combo/errors.hpp"

namespace combo {

void require_finite(const RealMatrix& m, std::string_view what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DimensionError(std::string(what) + ": matrix must be non-empty");
  }
  if (!m.allFinite()) {
    throw DimensionError(std::string(what) + ": matrix has non-finite entries");
  }
}

QrFactors qr_decompose(const RealMatrix& k) {
  require_finite(k, "qr_decompose");
  Eigen::HouseholderQR<RealMatrix> qr(k);
  QrFactors out;
  out.q = qr.householderQ() * RealMatrix::Identity(k.rows(), k.rows());
  out.r = qr.matrixQR().triangularView<Eigen::Upper>();
  return out;
}

LeastSquaresResult least_squares_solve(const RealMatrix& a,
                                       const RealMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("least_squares_solve: row counts differ");
  }
  LeastSquaresResult out;
  if (a.cols() == 0) {
    out.solution = RealMatrix::Zero(0, b.cols());
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod;
  cod.setThreshold(kDefaultRankTolerance);
  cod.compute(a);
  out.solution = cod.solve(b);
  out.rank = cod.rank();
  out.rank_deficient = out.rank < a.cols();
  return out;
}

Index numerical_rank(const RealMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

RealMatrix select_columns(const RealMatrix& a, std::span<const Index> cols) {
  RealMatrix out(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= a.cols()) {
      throw DimensionError("select_columns: index out of range");
    }
    out.col(static_cast<Index>(j)) = a.col(cols[j]);
  }
  return out;
}

RealVector vec(const RealMatrix& m) {
  // Eigen storage is column-major, so the raw buffer is already stacked.
  return Eigen::Map<const RealVector>(m.data(), m.size());
}

RealMatrix unvec(const RealVector& v, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || v.size() != rows * cols) {
    throw DimensionError("unvec: length does not match rows * cols");
  }
  return Eigen::Map<const RealMatrix>(v.data(), rows, cols);
}

RealVector kron_identity_apply(const RealMatrix& a, const RealVector& s) {
  const Index n = a.cols();
  if (n == 0 || s.size() % n != 0) {
    throw DimensionError("kron_identity_apply: length not a multiple of cols");
  }
  const Index r = s.size() / n;
  const Index m = a.rows();
  RealVector out(m * r);
  for (Index j = 0; j < r; ++j) {
    out.segment(j * m, m).noalias() = a * s.segment(j * n, n);
  }
  return out;
}

RealMatrix kron_identity_dense(const RealMatrix& a, Index r) {
  if (r < 1) throw DimensionError("kron_identity_dense: r must be >= 1");
  const Index m = a.rows();
  const Index n = a.cols();
  RealMatrix out = RealMatrix::Zero(m * r, n * r);
  for (Index j = 0; j < r; ++j) out.block(j * m, j * n, m, n) = a;
  return out;
}

}  // namespace combo
