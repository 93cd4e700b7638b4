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

// Hot loops of the planner. Each kernel has a serial reference path and an
// OpenMP path selected by ExecPolicy; both must return identical values (the
// parallel loops partition independent outputs, no reductions reorder sums).

#include <vector>

#include "a2g/linkrate.hpp"

namespace a2g {

enum class ExecPolicy { Serial, Parallel };

/// Number of OpenMP threads the parallel paths use (1 without OpenMP).
int parallel_thread_count();

/// out(n, m) = amplitude * exp(-j 2 pi |rx[n] - tx[m]| / lambda)
void los_matrix(const std::vector<Vec3>& rx, const std::vector<Vec3>& tx, double amplitude,
                double wavelength, CMat& out, ExecPolicy policy);

/// out[i](m) = amplitude[i] * exp(-j 2 pi |tx[m] - station[i]| / lambda)
void los_vectors(const std::vector<Vec3>& tx, const std::vector<Vec3>& stations,
                 const std::vector<double>& amplitudes, double wavelength, std::vector<CVec>& out,
                 ExecPolicy policy);

/// Candidates of one randomization batch before power scaling. Column k of
/// `w` is the unit-modulus vector b/|b| built from b = factor * draws.col(k).
struct TrialBatch {
  CMat w;
  Eigen::VectorXd objective;         // w_k^H C w_k
  Eigen::VectorXd max_interference;  // max_i |h_i^H w_k|^2
};

/// `interference` holds h_i^H as rows (K x N_P); K may be 0.
TrialBatch randomization_trials(const CMat& factor, const CMat& draws, const CMat& objective,
                                const CMat& interference, ExecPolicy policy);

/// Per-M rate of a single-stream link whose power follows the interference
/// cap: R(M) = M b f(min(M delta / max_coupling, p_max) g / (M b N0)), M = 1..n_sub.
struct PowerSweepInput {
  int n_sub = 1;
  double subchannel_bw = 180e3;
  double noise_psd = 0.0;
  double delta = 0.0;  // may be +inf
  double max_coupling = 0.0;
  double p_max = 1.0;
  double gain = 0.0;
};

/// Entry M-1 holds R(M).
Eigen::VectorXd power_sweep_rates(const PowerSweepInput& in, const RateModel& rate,
                                  ExecPolicy policy);

/// Power of the sweep at M: min(M delta / max_coupling, p_max).
double power_sweep_power(const PowerSweepInput& in, int m);

}  // namespace a2g
