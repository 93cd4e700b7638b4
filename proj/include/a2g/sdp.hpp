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

#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "a2g/types.hpp"

namespace a2g {

/// tr(A W) <= rhs with A = F F^H Hermitian PSD, stored through its factor.
struct SdpConstraint {
  CMat factor;  // n x r
  double rhs = 0.0;

  /// A = h h^H
  static SdpConstraint rank_one(const CVec& h, double rhs);
  /// Factorises a Hermitian PSD matrix; throws InputError otherwise.
  static SdpConstraint from_matrix(const CMat& a, double rhs);

  CMat matrix() const { return factor * factor.adjoint(); }
  double apply(const CMat& w) const;  // tr(A W)
};

/// maximize tr(C W)  s.t.  tr(W) <= trace_budget, W_mm <= diag_bound,
///                         tr(A_k W) <= rhs_k, W Hermitian PSD.
struct LinearSdp {
  CMat c;
  double trace_budget = 1.0;
  double diag_bound = std::numeric_limits<double>::infinity();
  std::vector<SdpConstraint> constraints;

  int dim() const { return static_cast<int>(c.rows()); }
  /// Throws InputError on non-Hermitian C, dimension mismatch or bad budgets.
  void validate(double hermitian_tol = 1e-9) const;
};

enum class SdpStatus { Optimal, MaxIterations, InfeasibleTolerance };
const char* to_string(SdpStatus s);

enum class SdpAlgorithm {
  Barrier,  // primal-dual path following on the dual, strictly feasible primal iterates
  Admm      // dual ADMM (alternating PSD projection and multiplier updates)
};

struct SdpIterate {
  int iteration = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double objective = 0.0;
};

struct SdpOptions {
  SdpAlgorithm algorithm = SdpAlgorithm::Barrier;
  double tol = 1e-6;
  int max_iter = 50000;  // ADMM iterations; the barrier method caps Newton steps at 500
  int max_dim = 64;
  int max_constraints = 1024;
  /// Start with the rows that can bind and add violated rows on demand.
  bool constraint_generation = true;
  const CMat* warm_start = nullptr;  // ADMM only
  std::function<void(const SdpIterate&)> on_iterate;
};

struct SdpSolution {
  CMat w;
  double objective = 0.0;   // tr(C W) of the returned, exactly feasible W
  double dual_bound = 0.0;  // certified upper bound on the optimum
  SdpStatus status = SdpStatus::Optimal;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;  // (dual_bound - objective) / max(1, |dual_bound|)
  int iterations = 0;
  int active_constraints = 0;
  int numerical_rank = 0;
};

SdpSolution solve_linear_sdp(const LinearSdp& problem, const SdpOptions& options = {});

/// Eigenvalues above rank_tol * lambda_max.
int numerical_rank(const CMat& w, double rank_tol = 1e-6);

/// V Lambda^{1/2} e_1 (largest eigenpair), first non-zero entry real.
CVec principal_factor(const CMat& w);

/// Eigenvectors scaled by sqrt of their (clipped) eigenvalues, columns in
/// decreasing eigenvalue order: W = F F^H.
CMat psd_factor(const CMat& w);

}  // namespace a2g
