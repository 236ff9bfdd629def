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

#ifndef COMBO_SMV_HPP_
#define COMBO_SMV_HPP_

#include <cstddef>
#include <vector>

#include "combo/linalg.hpp"

namespace combo {

// Result of a single-measurement-vector solve.
struct SmvSolution {
  RealVector x;
  IndexSet support;  // ascending
  bool converged = false;
  std::size_t iterations = 0;
  double residual_norm = 0.0;  // ||y - A x||_2 for the returned x

  // Basis pursuit only: a dual vector nu with ||A^T nu||_inf <= 1 (up to the
  // solver tolerance) and nu^T y close to ||x||_1.
  RealVector dual;

  // Greedy solvers only: atoms in selection order, and the residual norm
  // after each selection.
  std::vector<Index> selection;
  std::vector<double> residual_history;
};

struct BpConfig {
  double duality_gap_tol = 1e-8;
  std::size_t max_interior_iterations = 50;
  // An entry counts as nonzero when |x_i| > nz_rel_tol * max_j |x_j|.
  double nz_rel_tol = 1e-4;
};

// Indices i with |x_i| > rel_tol * max_j |x_j|, ascending.
IndexSet relative_support(const RealVector& x, double rel_tol);

// min ||x||_1 subject to A x = y.
//
// Solved as the linear program  min sum(u)  s.t.  -u <= x <= u,  A x = y
// with a primal-dual interior-point method: Newton steps on the perturbed
// KKT conditions, eliminated down to an m x m normal-equations system, with
// a backtracking line search on the residual norm. Rank-deficient A is
// handled by restricting the equality constraints to range(A).
//
// Throws InfeasibleError if y is not in range(A). When the interior-point
// loop stalls or hits the iteration cap the current iterate is returned
// with converged == false.
SmvSolution basis_pursuit(const RealMatrix& a, const RealVector& y,
                          const BpConfig& cfg = {});

// Orthogonal matching pursuit. Stops after k_max atoms, when every column
// has been used, or once ||r||_2 < eps * ||y||_2.
SmvSolution omp(const RealMatrix& a, const RealVector& y, std::size_t k_max,
                double eps);

// Exhaustive search for the sparsest x with ||y - A x||_2 <= fit_tol ||y||_2.
// Support sizes are tried in increasing order and supports within a size in
// lexicographic order. Meant as a test oracle: refuses n > 20 or k_max > 5
// with TooLargeError; throws NotFoundError if nothing within k_max fits.
SmvSolution l0_bruteforce(const RealMatrix& a, const RealVector& y,
                          std::size_t k_max, double fit_tol);

}  // namespace combo

#endif  // COMBO_SMV_HPP_
