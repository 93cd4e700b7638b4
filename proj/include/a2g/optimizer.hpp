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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a2g/channel.hpp"
#include "a2g/linkrate.hpp"
#include "a2g/sdp.hpp"

namespace a2g {

enum class Method { None, ClosedForm, RankOneDirect, Randomization, NeighborScaled };
const char* to_string(Method m);

struct SlotProblem {
  const ChannelSnapshot* snapshot = nullptr;
  int scenario = 4;
  int n_sub = 111;
  double subchannel_bw = 180e3;
  double noise_psd = 3.981071705534972e-21;  // W/Hz, -174 dBm/Hz
  double p_max = 1.0;
  double p_ant = 0.2;
  double delta = 1e-13;  // W per subchannel, may be +inf
  const RateModel* rate = nullptr;

  void validate() const;
  double noise(int m) const { return m * subchannel_bw * noise_psd; }
};

struct SlotSolution {
  int m_star = 0;
  CVec w;
  CVec v_tilde;
  double rate_bps = 0.0;
  double upper_bound_bps = 0.0;
  double snr_linear = 0.0;
  double tx_power_w = 0.0;
  double max_interference_w = 0.0;   // per subchannel, max over TBSs
  double interference_margin_db = 0.0;  // 10 log10(delta / max_interference)
  bool rank1 = true;
  Method method = Method::None;
  bool sdp_degraded = false;
  bool near_field = false;
  int sdp_solves = 0;
  int m_evaluated = 0;
};

/// |v^H H0 w|^2 / (M b N0) with v normalised (scale invariant in v).
double a2g_snr(const CVec& w, const CVec& v, const CMat& h0, int m, double subchannel_bw,
               double noise_psd);

/// u_A / sqrt(N_A)
CVec receive_bf(const CVec& u_a);

struct InterferenceReport {
  std::vector<double> per_tbs_w;  // |h_i^H w|^2 / M
  double max_w = 0.0;
  double margin_db = std::numeric_limits<double>::infinity();
};

InterferenceReport interference_check(const CVec& w, const ChannelSnapshot& snap, int m,
                                      double delta);

/// Exact sweep over M for single-antenna plane links (scenarios 1 and 2).
SlotSolution solve_scenario1_slot(const SlotProblem& p, ExecPolicy policy = ExecPolicy::Parallel);

struct OptimizerOptions {
  SdpOptions sdp;
  int n_trials = 100;
  double rank_tol = 1e-6;
  bool exhaustive_m = false;
  bool full_band = false;       // force M = N_sub
  bool printed_l3 = false;      // (e_max + d)/a in the randomization cap, debug only
  std::uint64_t seed = 1;
  ExecPolicy policy = ExecPolicy::Parallel;
};

/// Objective matrix C with SNR = w^H C w / (M b N0).
CMat objective_matrix(const ChannelSnapshot& snap);

/// Relaxation of the per-M problem. The SDP is solved without the SNR cap;
/// capped solutions for any surrogate follow by scaling W (every constraint
/// is homogeneous).
struct RelaxedSolution {
  int m = 0;
  CMat w;                   // uncapped optimum
  double value = 0.0;       // tr(C W)
  double bound = 0.0;       // certified upper bound on tr(C W)
  int rank = 1;
  SdpStatus status = SdpStatus::Optimal;
  bool closed_form = false;  // interference-free optimum reused
  bool analytic_fallback = false;
};

struct UpperBound {
  double rate_bps = 0.0;
  double snr = 0.0;
  RelaxedSolution relaxed;
};

/// Cached rank-one transmit vectors per (M, slot).
class NeighborCache {
 public:
  void store(int m, int slot, const CVec& w);
  /// Nearest earlier slot, otherwise nearest later slot.
  std::optional<CVec> nearest(int m, int slot) const;
  std::size_t size() const;
  void clear() { by_m_.clear(); }

 private:
  std::map<int, std::map<int, CVec>> by_m_;
};

/// Interference-free optimum with sum and per-antenna budgets (rank-one C).
CVec power_limited_beamformer(const CVec& c, double p_max, double p_ant);

class SlotOptimizer {
 public:
  SlotOptimizer(const SlotProblem& p, const OptimizerOptions& opt);

  RelaxedSolution relax(int m);
  UpperBound upper_bound(int m);

  struct Candidate {
    CVec w;
    double rate_bps = 0.0;
    double snr = 0.0;
    Method method = Method::None;
  };
  /// Best feasible transmit vector for M over all surrogates and methods.
  Candidate feasible(int m, const RelaxedSolution& relaxed, const NeighborCache& cache);

  SlotSolution sweep(NeighborCache& cache);

  int sdp_solves() const { return sdp_solves_; }

 private:
  const SlotProblem& p_;
  OptimizerOptions opt_;
  CMat c_;
  CVec c_vec_;  // rank-one factor of C when available
  bool rank_one_c_ = true;
  CMat h_rows_;  // h_i^H as rows
  double p_ant_eff_ = 0.0;
  CVec w_free_;  // interference-free optimum
  double free_value_ = 0.0;
  double free_max_int_ = 0.0;
  int sdp_solves_ = 0;
  bool degraded_ = false;
  std::map<int, RelaxedSolution> relaxed_cache_;
  std::optional<CMat> warm_;

  double scale_to_feasible(const CVec& w, int m) const;
};

/// Convenience wrappers over SlotOptimizer.
UpperBound upper_bound_slot(const SlotProblem& p, int m, const OptimizerOptions& opt = {});
SlotOptimizer::Candidate feasible_slot(const SlotProblem& p, int m, const RelaxedSolution& relaxed,
                                       const NeighborCache& cache, const OptimizerOptions& opt = {});
SlotSolution sweep_M(const SlotProblem& p, NeighborCache& cache, const OptimizerOptions& opt = {});

}  // namespace a2g
