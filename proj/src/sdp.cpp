// SPDX-License-Identifier: Apache-2.0
//
// a2g-offload: descent-phase air-to-ground data offload planning
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "a2g/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace a2g {

// ---- constraint helpers ---------------------------------------------------

SdpConstraint SdpConstraint::rank_one(const CVec& h, double rhs) {
  SdpConstraint c;
  c.factor = h;
  c.rhs = rhs;
  return c;
}

SdpConstraint SdpConstraint::from_matrix(const CMat& a, double rhs) {
  if (a.rows() != a.cols()) throw InputError("SdpConstraint: matrix is not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw InputError("SdpConstraint: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (a + a.adjoint())));
  const auto& ev = es.eigenvalues();
  const double top = std::max(std::abs(ev.maxCoeff()), std::abs(ev.minCoeff()));
  if (ev.minCoeff() < -1e-9 * std::max(top, 1e-300))
    throw InputError("SdpConstraint: matrix is not positive semidefinite");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-14 * top) keep.push_back(i);
  SdpConstraint c;
  c.rhs = rhs;
  c.factor.resize(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    c.factor.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(ev(keep[k]));
  return c;
}

double SdpConstraint::apply(const CMat& w) const {
  return (factor.adjoint() * w * factor).trace().real();
}

void LinearSdp::validate(double hermitian_tol) const {
  const Eigen::Index n = c.rows();
  if (c.cols() != n) throw InputError("LinearSdp: objective is not square");
  const double scale = std::max(1.0, n > 0 ? c.cwiseAbs().maxCoeff() : 0.0);
  if (n > 0 && (c - c.adjoint()).cwiseAbs().maxCoeff() > hermitian_tol * scale)
    throw InputError("LinearSdp: objective is not Hermitian");
  if (!(trace_budget > 0.0) || !std::isfinite(trace_budget))
    throw InputError("LinearSdp: trace budget must be positive and finite");
  if (!(diag_bound >= 0.0)) throw InputError("LinearSdp: diagonal bound must be non-negative");
  for (const auto& k : constraints) {
    if (k.factor.rows() != n) throw InputError("LinearSdp: constraint dimension mismatch");
    if (!(k.rhs >= 0.0)) throw InputError("LinearSdp: constraint right-hand side must be non-negative");
  }
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::MaxIterations: return "max_iterations";
    case SdpStatus::InfeasibleTolerance: return "infeasible_tolerance";
  }
  return "?";
}

// ---- factor utilities -------------------------------------------------------

int numerical_rank(const CMat& w, double rank_tol) {
  if (w.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (w + w.adjoint())), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > rank_tol * top) ++r;
  return r;
}

CMat psd_factor(const CMat& w) {
  const Eigen::Index n = w.rows();
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (w + w.adjoint())));
  CMat f(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index i = n - 1 - k;
    f.col(k) = es.eigenvectors().col(i) * std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  }
  return f;
}

CVec principal_factor(const CMat& w) {
  if (w.size() == 0) return CVec();
  CVec v = psd_factor(w).col(0);
  const double nv = v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * nv) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

namespace {

// Normalised row tr(F F^H X) <= rhs. identity rows have F = I.
struct Row {
  CMat f;
  double rhs = 0.0;
  bool identity = false;
  int cols() const { return static_cast<int>(f.cols()); }
};

double row_value(const Row& r, const CMat& x) {
  if (r.identity) return x.trace().real();
  return (r.f.adjoint() * x * r.f).trace().real();
}

double lambda_max(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (a + a.adjoint())), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

CMat weighted_sum(const std::vector<const Row*>& rows, const Eigen::VectorXd& y, Eigen::Index n) {
  // One rank-k update over the stacked sqrt(y_j) F_j instead of a product per row.
  Eigen::Index cols = 0;
  double diag = 0.0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const double yj = y(static_cast<Eigen::Index>(j));
    if (yj <= 0.0) continue;
    if (rows[j]->identity) {
      diag += yj;
    } else {
      cols += rows[j]->f.cols();
    }
  }
  CMat stacked(n, cols);
  Eigen::Index at = 0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const double yj = y(static_cast<Eigen::Index>(j));
    if (yj <= 0.0 || rows[j]->identity) continue;
    const CMat& f = rows[j]->f;
    stacked.middleCols(at, f.cols()) = std::sqrt(yj) * f;
    at += f.cols();
  }
  CMat s = CMat::Zero(n, n);
  if (cols > 0) s.selfadjointView<Eigen::Lower>().rankUpdate(stacked);
  s.triangularView<Eigen::StrictlyUpper>() = s.adjoint();
  s.diagonal().array() += diag;
  return s;
}

// Upper bound on max tr(C X) over {tr(A_j X) <= b_j for the given rows, tr X <= 1}
// from any lambda >= 0 (the identity row must be among the rows).
double certified_bound(const CMat& c, const std::vector<const Row*>& rows, const Eigen::VectorXd& lam) {
  Eigen::VectorXd l = lam.cwiseMax(0.0);
  double b = 0.0;
  for (std::size_t j = 0; j < rows.size(); ++j) b += l(static_cast<Eigen::Index>(j)) * rows[j]->rhs;
  const double t = lambda_max(c - weighted_sum(rows, l, c.rows()));
  return b + std::max(t, 0.0);
}

struct InnerResult {
  CMat x;
  Eigen::VectorXd lambda;
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

// ---- barrier path following on the dual ------------------------------------
//
//   min_l  b^T l - mu log det Z(l) - mu sum log l_j,   Z(l) = sum l_j A_j - C
//
// At the centre X = mu Z^{-1} satisfies tr(A_j X) = b_j - mu / l_j, so the
// primal iterate is strictly feasible and the gap is mu (n + m).

struct BarrierState {
  Eigen::VectorXd lam;
  Eigen::LLT<CMat> llt;
  double logdet = 0.0;
};

bool factor_z(const CMat& c, const std::vector<const Row*>& rows, const Eigen::VectorXd& lam,
              BarrierState& st) {
  CMat z = weighted_sum(rows, lam, c.rows()) - c;
  st.llt.compute(z);
  if (st.llt.info() != Eigen::Success) return false;
  const CMat& l = st.llt.matrixLLT();
  double ld = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    ld += 2.0 * std::log(d);
  }
  st.logdet = ld;
  return true;
}

InnerResult barrier_solve(const CMat& c, const std::vector<const Row*>& rows, double gap_tol,
                          int max_newton, const std::function<void(const SdpIterate&)>& cb) {
  const Eigen::Index n = c.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  InnerResult out;

  // Column blocks of the stacked factor.
  std::vector<Eigen::Index> start(rows.size() + 1, 0);
  for (std::size_t j = 0; j < rows.size(); ++j)
    start[j + 1] = start[j] + (rows[j]->identity ? n : rows[j]->f.cols());
  const Eigen::Index total = start.back();
  CMat stacked(n, total);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j]->identity) {
      stacked.middleCols(start[j], n) = CMat::Identity(n, n);
    } else {
      stacked.middleCols(start[j], rows[j]->f.cols()) = rows[j]->f;
    }
  }

  BarrierState st;
  st.lam = Eigen::VectorXd::Ones(m);
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (rows[j]->identity) st.lam(static_cast<Eigen::Index>(j)) = 1.0 + std::max(0.0, lambda_max(c));
  while (!factor_z(c, rows, st.lam, st)) st.lam *= 2.0;  // identity row guarantees termination

  double mu = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) mu += rows[static_cast<std::size_t>(j)]->rhs * st.lam(j);
  mu = std::max(mu, 1e-3) / static_cast<double>(n + m);

  int steps = 0;
  bool done = false;
  Eigen::VectorXd grad(m), dir(m);
  Eigen::MatrixXd hess(m, m);
  while (!done && steps < max_newton) {
    // centring
    for (int inner = 0; inner < 60 && steps < max_newton; ++inner, ++steps) {
      const CMat g = st.llt.matrixL().solve(stacked);
      const CMat q = g.adjoint() * g;
      for (Eigen::Index j = 0; j < m; ++j) {
        double tj = 0.0;
        for (Eigen::Index a = start[j]; a < start[j + 1]; ++a) tj += q(a, a).real();
        grad(j) = rows[static_cast<std::size_t>(j)]->rhs - mu * tj - mu / st.lam(j);
        for (Eigen::Index k = 0; k <= j; ++k) {
          double h = q.block(start[j], start[k], start[j + 1] - start[j], start[k + 1] - start[k])
                         .cwiseAbs2()
                         .sum();
          hess(j, k) = hess(k, j) = mu * h;
        }
        hess(j, j) += mu / (st.lam(j) * st.lam(j));
      }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      dir = -ldlt.solve(grad);
      if (!dir.allFinite()) break;
      const double dec2 = -grad.dot(dir) / mu;
      if (dec2 < 1e-10) break;

      // Exact line search. With e = eig(L^{-1} D L^{-H}), D = sum_j dir_j A_j,
      //   phi'(t) = b.dir - mu sum e_i / (1 + t e_i) - mu sum dir_j / (lam_j + t dir_j)
      // costs O(n + m), so no factorization is needed until the step is chosen.
      Eigen::VectorXd dcol(total);
      for (Eigen::Index jj = 0; jj < m; ++jj) dcol.segment(start[jj], start[jj + 1] - start[jj]).setConstant(dir(jj));
      const CMat dm = g * dcol.asDiagonal() * g.adjoint();
      Eigen::SelfAdjointEigenSolver<CMat> des(CMat(0.5 * (dm + dm.adjoint())), Eigen::EigenvaluesOnly);
      const Eigen::VectorXd& e = des.eigenvalues();
      double bd = 0.0, t_max = std::numeric_limits<double>::infinity();
      for (Eigen::Index jj = 0; jj < m; ++jj) {
        bd += rows[static_cast<std::size_t>(jj)]->rhs * dir(jj);
        if (dir(jj) < 0.0) t_max = std::min(t_max, -st.lam(jj) / dir(jj));
      }
      for (Eigen::Index i = 0; i < e.size(); ++i)
        if (e(i) < 0.0) t_max = std::min(t_max, -1.0 / e(i));
      auto dphi = [&](double t, double& d2) {
        double d1 = bd;
        d2 = 0.0;
        for (Eigen::Index i = 0; i < e.size(); ++i) {
          const double r = e(i) / (1.0 + t * e(i));
          d1 -= mu * r;
          d2 += mu * r * r;
        }
        for (Eigen::Index jj = 0; jj < m; ++jj) {
          const double r = dir(jj) / (st.lam(jj) + t * dir(jj));
          d1 -= mu * r;
          d2 += mu * r * r;
        }
        return d1;
      };
      double lo = 0.0, hi = std::isfinite(t_max) ? t_max : 1.0;
      double d2 = 0.0;
      if (!std::isfinite(t_max))
        while (dphi(hi, d2) < 0.0 && hi < 1e12) hi *= 2.0;
      double t = std::min(1.0, 0.5 * hi);
      for (int it = 0; it < 60; ++it) {
        const double d1 = dphi(t, d2);
        if (d1 < 0.0) lo = t; else hi = t;
        double next = d2 > 0.0 ? t - d1 / d2 : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-12 * t) {
          t = next;
          break;
        }
        t = next;
      }
      BarrierState trial;
      bool moved = false;
      for (int ls = 0; ls < 60 && t > 0.0; ++ls, t *= 0.5) {
        trial.lam = st.lam + t * dir;
        if (trial.lam.minCoeff() <= 0.0) continue;
        if (factor_z(c, rows, trial.lam, trial)) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      st.lam = trial.lam;
      st.llt = trial.llt;
      st.logdet = trial.logdet;
    }

    double dual = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) dual += rows[static_cast<std::size_t>(j)]->rhs * st.lam(j);
    const double gap = mu * static_cast<double>(n + m);
    if (cb) {
      SdpIterate it;
      it.iteration = steps;
      it.gap = gap;
      it.objective = dual;
      cb(it);
    }
    if (gap <= gap_tol * std::max(std::abs(dual), 1e-14)) {
      done = true;
      break;
    }
    mu *= 0.1;
  }

  const CMat zinv = st.llt.solve(CMat::Identity(n, n));
  out.x = mu * zinv;
  out.x = 0.5 * (out.x + out.x.adjoint());
  out.lambda = st.lam;
  out.iterations = steps;
  out.converged = done;
  return out;
}

// ---- dual ADMM (alternating PSD projection and multiplier updates) ---------
//
//   min <-C, X>  s.t. tr(A_j X) + s_j = b_j,  X PSD, s >= 0
//
// y-update solves (AA*) y = -(mu (A(X,s) - b) + A(S + C, S_s)); the PSD part of
// V = -C - A*y - mu X gives S, X = (S - V) / mu.

InnerResult admm_solve(const CMat& c, const std::vector<const Row*>& rows, double tol, int max_iter,
                       const CMat* warm, const std::function<void(const SdpIterate&)>& cb) {
  const Eigen::Index n = c.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  InnerResult out;

  std::vector<CMat> full(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    full[j] = rows[j]->identity ? CMat(CMat::Identity(n, n)) : CMat(rows[j]->f * rows[j]->f.adjoint());
  Eigen::MatrixXd aat(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k <= j; ++k) {
      const double v = (full[j].adjoint() * full[k]).trace().real();  // <A_j, A_k>
      aat(j, k) = aat(k, j) = v;
    }
  aat.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> aat_llt(aat);

  Eigen::VectorXd b(m);
  for (Eigen::Index j = 0; j < m; ++j) b(j) = rows[static_cast<std::size_t>(j)]->rhs;
  const double bnorm = b.norm();
  const double cnorm = c.norm();

  auto apply_a = [&](const CMat& x) {
    Eigen::VectorXd v(m);
    for (Eigen::Index j = 0; j < m; ++j) v(j) = (full[j] * x).trace().real();
    return v;
  };
  auto adjoint_a = [&](const Eigen::VectorXd& y) {
    CMat s = CMat::Zero(n, n);
    for (Eigen::Index j = 0; j < m; ++j) s.noalias() += y(j) * full[j];
    return s;
  };

  CMat x = warm ? CMat(*warm) : CMat(CMat::Zero(n, n));
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  CMat sx = CMat::Zero(n, n);
  Eigen::VectorXd ss = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  double mu = 1.0;
  double pinf = 0.0, dinf = 0.0;

  int it = 0;
  for (; it < max_iter; ++it) {
    const Eigen::VectorXd rhs = mu * (apply_a(x) + s - b) + apply_a(CMat(sx + c)) + ss;
    y = -aat_llt.solve(rhs);
    const CMat v = -c - adjoint_a(y) - mu * x;
    const Eigen::VectorXd vs = -y - mu * s;

    Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (v + v.adjoint())));
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const CMat sx_new = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::VectorXd ss_new = vs.cwiseMax(0.0);
    const CMat x_new = (sx_new - v) / mu;
    const Eigen::VectorXd s_new = (ss_new - vs) / mu;

    dinf = mu * std::sqrt((x_new - x).squaredNorm() + (s_new - s).squaredNorm()) / (1.0 + cnorm);
    x = x_new;
    s = s_new;
    sx = sx_new;
    ss = ss_new;
    pinf = (apply_a(x) + s - b).norm() / (1.0 + bnorm);
    const double pobj = (c * x).trace().real();
    const double dobj = -b.dot(y);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (cb && (it % 10 == 0)) {
      SdpIterate r;
      r.iteration = it;
      r.primal_residual = pinf;
      r.dual_residual = dinf;
      r.gap = gap;
      r.objective = pobj;
      cb(r);
    }
    if (pinf <= tol && dinf <= tol && gap <= tol) {
      out.converged = true;
      ++it;
      break;
    }
    // residual balancing
    if (it % 20 == 19) {
      if (pinf > 5.0 * dinf) mu = std::max(mu / 1.6, 1e-6);
      else if (dinf > 5.0 * pinf) mu = std::min(mu * 1.6, 1e6);
    }
  }
  out.x = 0.5 * (x + x.adjoint());
  out.lambda = -y;
  out.iterations = it;
  out.primal_residual = pinf;
  out.dual_residual = dinf;
  return out;
}

}  // namespace

SdpSolution solve_linear_sdp(const LinearSdp& problem, const SdpOptions& options) {
  problem.validate();
  const Eigen::Index n0 = problem.dim();
  if (n0 > options.max_dim) throw InputError("solve_linear_sdp: dimension exceeds the configured cap");
  if (static_cast<int>(problem.constraints.size()) > options.max_constraints)
    throw InputError("solve_linear_sdp: too many constraints");

  SdpSolution sol;
  sol.w = CMat::Zero(n0, n0);
  if (n0 == 0) return sol;
  const double p = problem.trace_budget;

  // All rows in original scale; the trace row is index 0.
  std::vector<Row> rows;
  {
    Row t;
    t.identity = true;
    t.rhs = p;
    rows.push_back(t);
    if (problem.diag_bound < p) {
      for (Eigen::Index i = 0; i < n0; ++i) {
        Row d;
        d.f = CMat(CVec::Unit(n0, i));
        d.rhs = problem.diag_bound;
        rows.push_back(d);
      }
    }
    for (const auto& k : problem.constraints) {
      if (k.factor.cols() == 0 || k.factor.norm() == 0.0) continue;
      Row r;
      r.f = k.factor;
      r.rhs = k.rhs;
      rows.push_back(r);
    }
  }

  // Rows with zero budget pin W to the null space of their matrices.
  CMat basis;  // n0 x n
  {
    std::vector<const Row*> zero;
    Eigen::Index zc = 0;
    for (const auto& r : rows)
      if (!r.identity && r.rhs <= 0.0) {
        zero.push_back(&r);
        zc += r.f.cols();
      }
    if (zero.empty()) {
      basis = CMat::Identity(n0, n0);
    } else {
      CMat z(n0, zc);
      Eigen::Index at = 0;
      for (const Row* r : zero) {
        z.middleCols(at, r->f.cols()) = r->f;
        at += r->f.cols();
      }
      Eigen::JacobiSVD<CMat> svd(z.adjoint(), Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double top = sv.size() > 0 ? sv(0) : 0.0;
      Eigen::Index rank = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-12 * top) ++rank;
      basis = svd.matrixV().rightCols(n0 - rank);
    }
  }
  const Eigen::Index n = basis.cols();
  if (n == 0) {
    sol.numerical_rank = 0;
    return sol;
  }

  CMat c = basis.adjoint() * problem.c * basis;
  c = 0.5 * (c + c.adjoint());
  const double cscale = [&] {
    Eigen::SelfAdjointEigenSolver<CMat> es(c, Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues().maxCoeff()), std::abs(es.eigenvalues().minCoeff()));
  }();
  if (!(cscale > 0.0)) {
    sol.numerical_rank = 0;
    return sol;
  }
  if (lambda_max(c) <= 0.0) {
    // no direction improves on W = 0
    sol.dual_bound = 0.0;
    return sol;
  }
  const CMat cn = c / cscale;

  // Normalised rows in the reduced space: X = W / P, tr(A_j) = 1.
  std::vector<Row> norm;
  std::vector<double> priority;
  {
    Row t;
    t.identity = true;
    t.rhs = 1.0;
    norm.push_back(t);
    priority.push_back(0.0);
    for (std::size_t j = 1; j < rows.size(); ++j) {
      const Row& r = rows[j];
      if (r.rhs <= 0.0) continue;
      CMat f = basis.adjoint() * r.f;
      const double tr = f.squaredNorm();
      if (!(tr > 0.0)) continue;
      Row nr;
      nr.f = f / std::sqrt(tr);
      nr.rhs = r.rhs / (p * tr);
      if (nr.rhs >= 1.0) continue;  // tr(A X) <= tr(A) tr(X) <= 1: never binds
      norm.push_back(nr);
      // PAPC rows first, then interference rows by restrictiveness
      priority.push_back(j <= static_cast<std::size_t>(problem.diag_bound < p ? n0 : 0) ? 0.5 : 1.0 / nr.rhs);
    }
  }

  std::vector<char> active(norm.size(), 0);
  active[0] = 1;
  {
    std::vector<std::size_t> order;
    for (std::size_t j = 1; j < norm.size(); ++j) order.push_back(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return priority[a] > priority[b]; });
    const std::size_t initial = options.constraint_generation ? 8 : order.size();
    std::size_t taken = 0;
    for (std::size_t j : order) {
      const bool papc = priority[j] == 0.5;
      if (papc || taken < initial) {
        active[j] = 1;
        if (!papc) ++taken;
      }
    }
  }

  // Below ~1e-8 the primal X = mu Z^{-1} loses more to cancellation in Z than it gains.
  const double inner_tol = options.algorithm == SdpAlgorithm::Barrier ? std::min(options.tol, 1e-8) : options.tol;
  InnerResult res;
  std::vector<const Row*> act;
  int total_iter = 0;
  double worst = 0.0;
  for (int round = 0; round < 64; ++round) {
    act.clear();
    for (std::size_t j = 0; j < norm.size(); ++j)
      if (active[j]) act.push_back(&norm[j]);
    if (options.algorithm == SdpAlgorithm::Barrier) {
      res = barrier_solve(cn, act, inner_tol, 500, options.on_iterate);
    } else {
      CMat warm;
      const CMat* wp = nullptr;
      if (options.warm_start && options.warm_start->rows() == n0) {
        warm = basis.adjoint() * (*options.warm_start) * basis / p;
        wp = &warm;
      }
      res = admm_solve(cn, act, options.tol, options.max_iter, wp, options.on_iterate);
    }
    total_iter += res.iterations;

    // Violations of inactive rows.
    std::vector<std::pair<double, std::size_t>> viol;
    for (std::size_t j = 0; j < norm.size(); ++j) {
      if (active[j]) continue;
      const double ratio = row_value(norm[j], res.x) / norm[j].rhs;
      if (ratio > 1.0 + 1e-9) viol.emplace_back(ratio, j);
    }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end(), std::greater<>());
    for (std::size_t k = 0; k < viol.size() && k < 16; ++k) active[viol[k].second] = 1;
  }

  // Exact feasibility by scaling.
  worst = 0.0;
  for (const auto& r : norm) worst = std::max(worst, row_value(r, res.x) / r.rhs);
  CMat x = res.x;
  if (worst > 1.0) x /= worst;
  {
    // The principal direction alone is often the better primal point: it is
    // free of the noise mu Z^{-1} carries off the optimal face.
    const CVec v = principal_factor(x);
    CMat x1 = v * v.adjoint();
    double w1 = 0.0;
    for (const auto& r : norm) w1 = std::max(w1, row_value(r, x1) / r.rhs);
    if (w1 > 0.0) {
      x1 /= w1;
      if ((cn * x1).trace().real() > (cn * x).trace().real()) x = x1;
    }
  }

  const double bound = certified_bound(cn, act, res.lambda);
  const CMat w = p * basis * x * basis.adjoint();
  sol.w = 0.5 * (w + w.adjoint());
  sol.objective = (problem.c * sol.w).trace().real();
  sol.dual_bound = std::max(bound * cscale * p, sol.objective);
  sol.gap = (sol.dual_bound - sol.objective) / std::max(std::abs(sol.dual_bound), 1e-300);
  sol.primal_residual = std::max(0.0, worst - 1.0);
  sol.dual_residual = options.algorithm == SdpAlgorithm::Admm ? res.dual_residual : 0.0;
  sol.iterations = total_iter;
  sol.active_constraints = static_cast<int>(act.size());
  sol.numerical_rank = numerical_rank(sol.w);
  if (sol.gap <= 10.0 * options.tol) {
    sol.status = SdpStatus::Optimal;
  } else if (!res.converged) {
    sol.status = SdpStatus::MaxIterations;
  } else {
    sol.status = SdpStatus::InfeasibleTolerance;
  }
  return sol;
}

}  // namespace a2g
