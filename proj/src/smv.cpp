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

#include "combo/smv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "combo/errors.hpp"

namespace combo {
namespace {

using Array = Eigen::ArrayXd;

struct InteriorPointResult {
  RealVector x;
  RealVector v;  // multiplier of A x = b (dual of the LP is -v)
  bool converged = false;
  std::size_t iterations = 0;
};

constexpr double kLineSearchAlpha = 0.01;
constexpr double kLineSearchBeta = 0.5;
constexpr double kBarrierGrowth = 10.0;
constexpr int kMaxBacktracks = 32;
constexpr double kNormalEquationsRidge = 1e-12;
constexpr double kPolishStartGap = 1e-3;
constexpr double kPolishSupportTol = 1e-6;
constexpr double kPolishFitTol = 1e-9;

struct Certificate {
  RealVector x;
  RealVector dual;  // ||A^T dual||_inf <= 1
};

// Crossover from an interior iterate to the optimal vertex it points at.
// Takes the large entries of x as the active set S, solves A_S x_S = b,
// and moves the dual the least amount needed to satisfy
// A_S^T nu = sign(x_S). The pair is returned only if, after scaling nu to
// exact dual feasibility, the gap ||x||_1 - nu^T b is at most gap_tol.
std::optional<Certificate> polish_vertex(const RealMatrix& a, const RealVector& b,
                                         const RealVector& x, const RealVector& nu,
                                         double gap_tol) {
  const Index m = a.rows();
  const double peak = x.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) return std::nullopt;
  IndexSet active;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > kPolishSupportTol * peak) active.push_back(i);
  }
  if (active.empty() || static_cast<Index>(active.size()) > m) return std::nullopt;

  const RealMatrix sub = select_columns(a, active);
  const LeastSquaresResult fit = least_squares_solve(sub, b);
  if (fit.rank_deficient) return std::nullopt;
  const RealVector xs = fit.solution.col(0);
  if ((sub * xs - b).norm() > kPolishFitTol * b.norm()) return std::nullopt;

  RealVector signs(static_cast<Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j) {
    const Index idx = static_cast<Index>(j);
    const double s = xs(idx) > 0.0 ? 1.0 : (xs(idx) < 0.0 ? -1.0 : 0.0);
    if (s == 0.0 || s * x(active[j]) <= 0.0) return std::nullopt;
    signs(idx) = s;
  }

  // Minimum-norm correction of nu onto {A_S^T nu = sign(x_S)}.
  const RealMatrix sub_t = sub.transpose();
  const RealVector shortfall = signs - sub_t * nu;
  RealVector dual = nu + least_squares_solve(sub_t, shortfall).solution.col(0);
  const double worst = (a.transpose() * dual).cwiseAbs().maxCoeff();
  if (!std::isfinite(worst)) return std::nullopt;
  if (worst > 1.0) dual /= worst;

  Certificate cert;
  cert.x = RealVector::Zero(x.size());
  for (std::size_t j = 0; j < active.size(); ++j) {
    cert.x(active[j]) = xs(static_cast<Index>(j));
  }
  const double gap = cert.x.lpNorm<1>() - dual.dot(b);
  if (!(gap <= gap_tol)) return std::nullopt;
  cert.dual = std::move(dual);
  return cert;
}

// Primal-dual path following for  min 1^T u  s.t.  x - u <= 0, -x - u <= 0,
// A x = b.  `a` must have full row rank and x0 must satisfy A x0 = b.
InteriorPointResult l1_equality_primal_dual(const RealMatrix& a,
                                            const RealVector& b,
                                            const RealVector& x0,
                                            const BpConfig& cfg) {
  const Index n = a.cols();
  const double two_n = 2.0 * static_cast<double>(n);

  Array x = x0.array();
  Array u = 0.95 * x.abs() + 0.10 * x.abs().maxCoeff();
  Array fu1 = x - u;
  Array fu2 = -x - u;
  Array lamu1 = -1.0 / fu1;
  Array lamu2 = -1.0 / fu2;
  RealVector v = -(a * (lamu1 - lamu2).matrix());
  Array atv = (a.transpose() * v).array();
  RealVector rpri = a * x.matrix() - b;

  auto residual_norm = [&](const Array& l1, const Array& l2, const Array& f1,
                           const Array& f2, const Array& at_v,
                           const RealVector& rp, double tau) {
    const Array rdual_x = l1 - l2 + at_v;
    const Array rdual_u = 1.0 - l1 - l2;
    const Array rcent1 = -l1 * f1 - 1.0 / tau;
    const Array rcent2 = -l2 * f2 - 1.0 / tau;
    return std::sqrt(rdual_x.square().sum() + rdual_u.square().sum() +
                     rcent1.square().sum() + rcent2.square().sum() +
                     rp.squaredNorm());
  };

  double sdg = -((fu1 * lamu1).sum() + (fu2 * lamu2).sum());
  double tau = kBarrierGrowth * two_n / sdg;
  double resnorm = residual_norm(lamu1, lamu2, fu1, fu2, atv, rpri, tau);

  InteriorPointResult out;
  std::size_t iter = 0;
  while (sdg >= cfg.duality_gap_tol && iter < cfg.max_interior_iterations) {
    ++iter;
    const Array w1 = -1.0 / tau * (-1.0 / fu1 + 1.0 / fu2) - atv;
    const Array w2 = -1.0 - 1.0 / tau * (1.0 / fu1 + 1.0 / fu2);
    const RealVector w3 = -rpri;

    const Array sig1 = -lamu1 / fu1 - lamu2 / fu2;
    const Array sig2 = lamu1 / fu1 - lamu2 / fu2;
    // sig1 - sig2^2 / sig1 without the cancellation once sig1 ~ |sig2|.
    const Array sigx = 4.0 * (lamu1 / fu1) * (lamu2 / fu2) / sig1;

    // Reduced system: (A diag(1/sigx) A^T) dv = -(w3 - A(...)).
    RealMatrix h = a * (1.0 / sigx).matrix().asDiagonal() * a.transpose();
    const double ridge =
        kNormalEquationsRidge * std::max(1.0, h.diagonal().maxCoeff());
    h.diagonal().array() += ridge;
    const RealVector w1p =
        w3 - a * (w1 / sigx - w2 * sig2 / (sigx * sig1)).matrix();
    const Eigen::LLT<RealMatrix> llt(h);
    if (llt.info() != Eigen::Success) break;
    const RealVector dv = -llt.solve(w1p);
    if (!dv.allFinite()) break;

    const Array atdv = (a.transpose() * dv).array();
    const Array dx = (w1 - w2 * sig2 / sig1 - atdv) / sigx;
    const RealVector adx = a * dx.matrix();
    const Array du = (w2 - sig2 * dx) / sig1;
    const Array dlamu1 = (lamu1 / fu1) * (-dx + du) - lamu1 - (1.0 / tau) / fu1;
    const Array dlamu2 = (lamu2 / fu2) * (dx + du) - lamu2 - (1.0 / tau) / fu2;

    // Largest step keeping lamu > 0 and fu < 0.
    double s = 1.0;
    for (Index i = 0; i < n; ++i) {
      if (dlamu1(i) < 0.0) s = std::min(s, -lamu1(i) / dlamu1(i));
      if (dlamu2(i) < 0.0) s = std::min(s, -lamu2(i) / dlamu2(i));
      const double d1 = dx(i) - du(i);
      const double d2 = -dx(i) - du(i);
      if (d1 > 0.0) s = std::min(s, -fu1(i) / d1);
      if (d2 > 0.0) s = std::min(s, -fu2(i) / d2);
    }
    s *= 0.99;

    bool accepted = false;
    Array xp, up, lamu1p, lamu2p, fu1p, fu2p, atvp;
    RealVector vp, rpp;
    for (int back = 0; back <= kMaxBacktracks; ++back) {
      xp = x + s * dx;
      up = u + s * du;
      vp = v + s * dv;
      atvp = atv + s * atdv;
      lamu1p = lamu1 + s * dlamu1;
      lamu2p = lamu2 + s * dlamu2;
      fu1p = xp - up;
      fu2p = -xp - up;
      rpp = rpri + s * adx;
      if (residual_norm(lamu1p, lamu2p, fu1p, fu2p, atvp, rpp, tau) <=
          (1.0 - kLineSearchAlpha * s) * resnorm) {
        accepted = true;
        break;
      }
      s *= kLineSearchBeta;
    }
    if (!accepted) break;

    x = std::move(xp);
    u = std::move(up);
    v = std::move(vp);
    atv = std::move(atvp);
    lamu1 = std::move(lamu1p);
    lamu2 = std::move(lamu2p);
    fu1 = std::move(fu1p);
    fu2 = std::move(fu2p);
    rpri = std::move(rpp);

    sdg = -((fu1 * lamu1).sum() + (fu2 * lamu2).sum());
    tau = kBarrierGrowth * two_n / sdg;
    resnorm = residual_norm(lamu1, lamu2, fu1, fu2, atv, rpri, tau);
    if (sdg < kPolishStartGap * std::max(1.0, x.abs().sum())) {
      if (auto cert = polish_vertex(a, b, x.matrix(), -v, cfg.duality_gap_tol)) {
        out.x = std::move(cert->x);
        out.v = -cert->dual;
        out.converged = true;
        out.iterations = iter;
        return out;
      }
    }
  }
  if (auto cert = polish_vertex(a, b, x.matrix(), -v, cfg.duality_gap_tol)) {
    out.x = std::move(cert->x);
    out.v = -cert->dual;
    out.converged = true;
    out.iterations = iter;
    return out;
  }
  out.x = x.matrix();
  out.v = v;
  out.converged = sdg < cfg.duality_gap_tol;
  out.iterations = iter;
  return out;
}

void check_system(const RealMatrix& a, const RealVector& y,
                  const char* who) {
  require_finite(a, who);
  if (y.size() != a.rows()) {
    throw DimensionError(std::string(who) + ": y length must equal A rows");
  }
  if (!y.allFinite()) {
    throw DimensionError(std::string(who) + ": y has non-finite entries");
  }
}

}  // namespace

IndexSet relative_support(const RealVector& x, double rel_tol) {
  IndexSet out;
  if (x.size() == 0) return out;
  const double peak = x.cwiseAbs().maxCoeff();
  if (peak == 0.0) return out;
  const double cutoff = rel_tol * peak;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > cutoff) out.push_back(i);
  }
  return out;
}

SmvSolution basis_pursuit(const RealMatrix& a, const RealVector& y,
                          const BpConfig& cfg) {
  check_system(a, y, "basis_pursuit");
  if (!(cfg.duality_gap_tol > 0.0) || cfg.max_interior_iterations == 0 ||
      !(cfg.nz_rel_tol > 0.0)) {
    throw std::invalid_argument("basis_pursuit: BpConfig values must be positive");
  }
  const Index m = a.rows();
  const Index n = a.cols();

  SmvSolution out;
  if (y.squaredNorm() == 0.0) {
    out.x = RealVector::Zero(n);
    out.dual = RealVector::Zero(m);
    out.converged = true;
    return out;
  }

  // Minimum-norm feasible start; also the feasibility test.
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod;
  cod.setThreshold(kDefaultRankTolerance);
  cod.compute(a);
  const RealVector x0 = cod.solve(y);
  const double scale = std::max(y.norm(), std::numeric_limits<double>::min());
  if ((a * x0 - y).norm() > 1e-8 * scale) {
    throw InfeasibleError("basis_pursuit: y is not in the range of A");
  }

  InteriorPointResult ipm;
  if (cod.rank() == m) {
    ipm = l1_equality_primal_dual(a, y, x0, cfg);
  } else {
    // Keep only independent constraints: project onto range(A).
    const Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU);
    const RealMatrix basis = svd.matrixU().leftCols(cod.rank());
    const RealMatrix reduced_a = basis.transpose() * a;
    const RealVector reduced_y = basis.transpose() * y;
    ipm = l1_equality_primal_dual(reduced_a, reduced_y, x0, cfg);
    ipm.v = basis * ipm.v;
  }

  out.x = std::move(ipm.x);
  out.dual = -ipm.v;
  out.converged = ipm.converged;
  out.iterations = ipm.iterations;
  out.residual_norm = (y - a * out.x).norm();
  out.support = relative_support(out.x, cfg.nz_rel_tol);
  return out;
}

SmvSolution omp(const RealMatrix& a, const RealVector& y, std::size_t k_max,
                double eps) {
  check_system(a, y, "omp");
  const Index m = a.rows();
  const Index n = a.cols();
  if (k_max > static_cast<std::size_t>(m)) {
    throw DimensionError("omp: k_max must not exceed the number of rows");
  }

  SmvSolution out;
  out.x = RealVector::Zero(n);
  out.converged = true;
  const double y_norm = y.norm();
  if (y_norm == 0.0) return out;

  const std::size_t limit =
      std::min<std::size_t>(k_max, static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  RealVector residual = y;
  RealVector coeffs;
  while (out.selection.size() < limit && residual.norm() >= eps * y_norm) {
    const RealVector corr = a.transpose() * residual;
    Index best = -1;
    double best_value = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double value = std::abs(corr(i));
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    out.selection.push_back(best);

    const RealMatrix sub = select_columns(a, out.selection);
    coeffs = least_squares_solve(sub, y).solution;
    residual = y - sub * coeffs;
    out.residual_history.push_back(residual.norm());
  }

  for (std::size_t j = 0; j < out.selection.size(); ++j) {
    out.x(out.selection[j]) = coeffs(static_cast<Index>(j));
  }
  out.support = out.selection;
  std::sort(out.support.begin(), out.support.end());
  out.iterations = out.selection.size();
  out.residual_norm = residual.norm();
  out.converged = out.residual_norm < eps * y_norm;
  return out;
}

SmvSolution l0_bruteforce(const RealMatrix& a, const RealVector& y,
                          std::size_t k_max, double fit_tol) {
  check_system(a, y, "l0_bruteforce");
  const Index n = a.cols();
  if (n > 20 || k_max > 5) {
    throw TooLargeError("l0_bruteforce: enumeration limited to n <= 20, k <= 5");
  }

  SmvSolution out;
  out.x = RealVector::Zero(n);
  out.converged = true;
  const double y_norm = y.norm();
  if (y_norm == 0.0) return out;

  const std::size_t max_size =
      std::min<std::size_t>(k_max, static_cast<std::size_t>(n));
  for (std::size_t size = 1; size <= max_size; ++size) {
    IndexSet subset(size);
    for (std::size_t j = 0; j < size; ++j) subset[j] = static_cast<Index>(j);
    while (true) {
      ++out.iterations;
      const RealMatrix sub = select_columns(a, subset);
      const RealVector coeffs = least_squares_solve(sub, y).solution;
      const double res = (y - sub * coeffs).norm();
      if (res <= fit_tol * y_norm) {
        for (std::size_t j = 0; j < size; ++j) {
          out.x(subset[j]) = coeffs(static_cast<Index>(j));
        }
        out.support = subset;
        out.residual_norm = res;
        return out;
      }
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 &&
             subset[pos - 1] == n - static_cast<Index>(size - pos + 1)) {
        --pos;
      }
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t j = pos; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  throw NotFoundError("l0_bruteforce: no support of size <= k_max fits y");
}

}  // namespace combo
