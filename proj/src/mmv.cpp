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

#include "combo/mmv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "combo/errors.hpp"

namespace combo {
namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                                start_);
  }

 private:
  Clock::time_point start_;
};

double row_score(const RealMatrix& c, Index i, double p) {
  if (p == 2.0) return c.row(i).norm();
  if (p == 1.0) return c.row(i).lpNorm<1>();
  return std::pow(c.row(i).array().abs().pow(p).sum(), 1.0 / p);
}

double restricted_residual(const MmvProblem& prob, const IndexSet& support) {
  if (support.empty()) return prob.y.norm();
  const RealMatrix sub = select_columns(prob.a, support);
  const RealMatrix w = least_squares_solve(sub, prob.y).solution;
  return (prob.y - sub * w).norm();
}

// Largest rows of S, then keep those whose least-squares coefficients are
// nonzero. Shared by CoMBo and plain concatenation.
IndexSet concatenated_support_step(const MmvProblem& prob, const RealMatrix& s,
                                   double row_nz_rel_tol) {
  const IndexSet candidates =
      largest_rows(s, static_cast<std::size_t>(prob.a.rows()));
  const RealMatrix sub = select_columns(prob.a, candidates);
  const RealMatrix w = least_squares_solve(sub, prob.y).solution;
  IndexSet refined;
  for (const Index row : nonzero_rows(w, row_nz_rel_tol)) {
    refined.push_back(candidates[static_cast<std::size_t>(row)]);
  }
  return refined;
}

IndexSet full_index_set(Index n) {
  IndexSet out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), Index{0});
  return out;
}

}  // namespace

void validate(const MmvProblem& prob) {
  require_finite(prob.a, "MmvProblem.A");
  require_finite(prob.y, "MmvProblem.Y");
  if (prob.a.rows() != prob.y.rows()) {
    throw DimensionError("MmvProblem: A and Y must have the same row count");
  }
}

void validate(const MmvAlgoConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("MmvAlgoConfig: eps must be > 0");
  if (!(cfg.p_norm >= 1.0 && cfg.p_norm <= 2.0)) {
    throw std::invalid_argument("MmvAlgoConfig: p_norm must lie in [1, 2]");
  }
  if (!(cfg.row_nz_rel_tol > 0.0)) {
    throw std::invalid_argument("MmvAlgoConfig: row_nz_rel_tol must be > 0");
  }
}

SmvSolver make_basis_pursuit(const BpConfig& cfg) {
  return [cfg](const RealMatrix& a, const RealVector& y) {
    return basis_pursuit(a, y, cfg);
  };
}

IndexSet largest_rows(const RealMatrix& s, std::size_t count) {
  const Index n = s.rows();
  const RealVector norms = s.rowwise().norm();
  IndexSet order = full_index_set(n);
  const std::size_t take = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), [&](Index lhs, Index rhs) {
                      if (norms(lhs) != norms(rhs)) return norms(lhs) > norms(rhs);
                      return lhs < rhs;
                    });
  order.resize(take);
  std::sort(order.begin(), order.end());
  return order;
}

IndexSet nonzero_rows(const RealMatrix& z, double rel_tol) {
  IndexSet out;
  if (z.size() == 0) return out;
  const RealVector norms = z.rowwise().norm();
  const double peak = norms.maxCoeff();
  if (peak == 0.0) return out;
  for (Index i = 0; i < norms.size(); ++i) {
    if (norms(i) > rel_tol * peak) out.push_back(i);
  }
  return out;
}

RealMatrix restrict_and_solve(const MmvProblem& prob, const IndexSet& support) {
  validate(prob);
  const Index n = prob.a.cols();
  if (support.size() > static_cast<std::size_t>(prob.a.rows())) {
    throw DimensionError("restrict_and_solve: support larger than m");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= n ||
        (i > 0 && support[i] <= support[i - 1])) {
      throw DimensionError("restrict_and_solve: support must be ascending and in range");
    }
  }
  RealMatrix x_hat = RealMatrix::Zero(n, prob.y.cols());
  if (support.empty()) return x_hat;
  const RealMatrix sub = select_columns(prob.a, support);
  const RealMatrix rows = least_squares_solve(sub, prob.y).solution;
  for (std::size_t i = 0; i < support.size(); ++i) {
    x_hat.row(support[i]) = rows.row(static_cast<Index>(i));
  }
  return x_hat;
}

RealMatrix solve_concatenated(const RealMatrix& a, const RealMatrix& z,
                              const SmvSolver& smv, bool monolithic,
                              std::size_t* solves) {
  const Index n = a.cols();
  const Index r = z.cols();
  if (monolithic) {
    const SmvSolution sol = smv(kron_identity_dense(a, r), vec(z));
    if (solves != nullptr) ++*solves;
    return unvec(sol.x, n, r);
  }
  // (I kron A) is block diagonal and ||.||_1 separates, so each column of Z
  // is an independent basis-pursuit problem.
  RealMatrix s(n, r);
  for (Index j = 0; j < r; ++j) {
    s.col(j) = smv(a, z.col(j)).x;
    if (solves != nullptr) ++*solves;
  }
  return s;
}

RecoveryResult somp(const MmvProblem& prob, const MmvAlgoConfig& cfg) {
  validate(prob);
  validate(cfg);
  const Stopwatch timer;
  const Index m = prob.a.rows();
  const Index n = prob.a.cols();
  if (cfg.k_known && *cfg.k_known > static_cast<std::size_t>(m)) {
    throw DimensionError("somp: k_known must not exceed m");
  }
  std::size_t limit = std::min(static_cast<std::size_t>(m),
                               static_cast<std::size_t>(n));
  if (cfg.k_known) limit = std::min(limit, *cfg.k_known);

  RecoveryResult out;
  const double y_norm = prob.y.norm();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  RealMatrix residual = prob.y;
  double residual_norm = y_norm;
  while (y_norm > 0.0 && out.selection.size() < limit &&
         residual_norm >= cfg.eps * y_norm) {
    const RealMatrix corr = prob.a.transpose() * residual;
    Index best = -1;
    double best_score = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double score = row_score(corr, i, cfg.p_norm);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    out.selection.push_back(best);

    // (I - P_t) Y with P_t the projector onto span(A_Lambda).
    const RealMatrix sub = select_columns(prob.a, out.selection);
    const RealMatrix coeffs = least_squares_solve(sub, prob.y).solution;
    residual = prob.y - sub * coeffs;
    residual_norm = residual.norm();
    out.residual_history.push_back(residual_norm);
  }

  out.support = out.selection;
  std::sort(out.support.begin(), out.support.end());
  out.x_hat = restrict_and_solve(prob, out.support);
  out.converged = residual_norm < cfg.eps * y_norm || y_norm == 0.0;
  out.runtime = timer.elapsed();
  return out;
}

RecoveryResult rembo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng, const SmvSolver& smv) {
  validate(prob);
  validate(cfg);
  if (!cfg.k_known) {
    throw std::invalid_argument("rembo: k_known is required");
  }
  const Stopwatch timer;
  const std::size_t k = *cfg.k_known;
  const Index m = prob.a.rows();
  const Index r = prob.y.cols();
  const std::size_t max_iter = cfg.max_iter.value_or(kRemboDefaultMaxIter);

  struct Attempt {
    IndexSet support;
    RealVector x;
    double residual = 0.0;
  };
  std::optional<Attempt> accepted;
  std::optional<Attempt> best;
  auto better = [&](const Attempt& lhs, const Attempt& rhs) {
    const bool lhs_fits = lhs.residual <= cfg.eps;
    const bool rhs_fits = rhs.residual <= cfg.eps;
    if (lhs_fits != rhs_fits) return lhs_fits;
    if (lhs_fits) return lhs.support.size() < rhs.support.size();
    return lhs.residual < rhs.residual;
  };

  RecoveryResult out;
  for (std::size_t t = 0; t < max_iter && !accepted; ++t) {
    RealVector w = random_gaussian(r, 1, rng).col(0);
    w /= w.norm();
    const RealVector y = prob.y * w;
    ++out.boosts_used;

    SmvSolution sol;
    try {
      sol = smv(prob.a, y);
      ++out.smv_solves;
    } catch (const InfeasibleError& e) {
      out.notes.emplace_back(e.what());
      continue;
    }
    Attempt attempt;
    attempt.support = sol.support;
    attempt.x = RealVector::Zero(sol.x.size());
    for (const Index i : sol.support) attempt.x(i) = sol.x(i);
    attempt.residual = (y - prob.a * attempt.x).norm();

    if (attempt.support.size() <= k && attempt.residual <= cfg.eps) {
      accepted = std::move(attempt);
    } else if (!best || better(attempt, *best)) {
      best = std::move(attempt);
    }
  }

  Attempt chosen;
  if (accepted) {
    chosen = std::move(*accepted);
    out.converged = true;
  } else if (best) {
    chosen = std::move(*best);
    out.notes.emplace_back("rembo: no draw passed the acceptance test");
  }
  if (chosen.support.size() > static_cast<std::size_t>(m)) {
    // Keep the m largest magnitudes so A_Lambda^+ stays overdetermined.
    chosen.support = largest_rows(chosen.x, static_cast<std::size_t>(m));
  }
  out.support = std::move(chosen.support);
  out.x_hat = restrict_and_solve(prob, out.support);
  out.runtime = timer.elapsed();
  return out;
}

RecoveryResult rembo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng) {
  return rembo(prob, cfg, rng, make_basis_pursuit(cfg.bp));
}

RecoveryResult naive_concat(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                            const SmvSolver& smv) {
  validate(prob);
  validate(cfg);
  const Stopwatch timer;
  RecoveryResult out;
  const RealMatrix s = solve_concatenated(prob.a, prob.y, smv,
                                          cfg.monolithic_concat,
                                          &out.smv_solves);
  out.support = concatenated_support_step(prob, s, cfg.row_nz_rel_tol);
  out.x_hat = restrict_and_solve(prob, out.support);
  out.converged =
      (prob.y - prob.a * out.x_hat).norm() <= cfg.eps * prob.y.norm();
  out.runtime = timer.elapsed();
  return out;
}

RecoveryResult naive_concat(const MmvProblem& prob, const MmvAlgoConfig& cfg) {
  return naive_concat(prob, cfg, make_basis_pursuit(cfg.bp));
}

RecoveryResult combo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng, const SmvSolver& smv) {
  validate(prob);
  validate(cfg);
  const Stopwatch timer;
  const Index m = prob.a.rows();
  const Index n = prob.a.cols();
  const Index r = prob.y.cols();
  const std::size_t max_iter = cfg.max_iter.value_or(kComboDefaultMaxIter);
  const double y_norm = prob.y.norm();

  RecoveryResult out;
  IndexSet support = full_index_set(n);
  bool any_accepted = false;
  IndexSet last_candidates;
  for (std::size_t t = 0; t < max_iter; ++t) {
    const RealMatrix q = random_orthonormal(r, rng);
    const RealMatrix s = solve_concatenated(prob.a, prob.y * q, smv,
                                            cfg.monolithic_concat,
                                            &out.smv_solves);
    ++out.boosts_used;
    last_candidates = largest_rows(s, static_cast<std::size_t>(m));
    IndexSet refined = concatenated_support_step(prob, s, cfg.row_nz_rel_tol);

    if (refined.empty() && y_norm > 0.0) {
      out.notes.emplace_back("combo: boost " + std::to_string(t + 1) +
                             " refined to an empty support; kept previous");
    } else if (refined.size() <= support.size()) {
      bool take = true;
      if (cfg.guard_residual) {
        const double current = restricted_residual(prob, support);
        const double proposed = restricted_residual(prob, refined);
        take = proposed <= std::max(current, cfg.eps * y_norm);
      }
      if (take) {
        support = std::move(refined);
        any_accepted = true;
      }
    }
    out.support_size_history.push_back(support.size());
  }

  if (!any_accepted && support.size() > static_cast<std::size_t>(m)) {
    out.notes.emplace_back("combo: no boost accepted; using last candidate rows");
    support = last_candidates;
  }
  out.support = std::move(support);
  out.x_hat = restrict_and_solve(prob, out.support);
  out.converged = (prob.y - prob.a * out.x_hat).norm() <= cfg.eps * y_norm;
  out.runtime = timer.elapsed();
  return out;
}

RecoveryResult combo(const MmvProblem& prob, const MmvAlgoConfig& cfg,
                     RngStream& rng) {
  return combo(prob, cfg, rng, make_basis_pursuit(cfg.bp));
}

}  // namespace combo
