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

#include "a2g/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>

namespace a2g {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int slot, int m) {
  return splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(slot) + 0x51ed2701ULL) ^
                    splitmix64(static_cast<std::uint64_t>(m) * 0x2545f4914f6cdd1dULL));
}

int method_priority(Method m) {
  switch (m) {
    case Method::ClosedForm: return 4;
    case Method::RankOneDirect: return 3;
    case Method::NeighborScaled: return 2;
    case Method::Randomization: return 1;
    case Method::None: return 0;
  }
  return 0;
}

double quad(const CMat& c, const CVec& w) { return std::max(0.0, (w.adjoint() * c * w)(0, 0).real()); }

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::None: return "none";
    case Method::ClosedForm: return "closed_form";
    case Method::RankOneDirect: return "rank_one_direct";
    case Method::Randomization: return "randomization";
    case Method::NeighborScaled: return "neighbor_scaled";
  }
  return "?";
}

void SlotProblem::validate() const {
  std::vector<std::string> errs;
  if (!snapshot) errs.push_back("slot problem: missing channel snapshot");
  if (!rate) errs.push_back("slot problem: missing rate model");
  if (n_sub < 1) errs.push_back("n_sub: must be at least 1");
  if (!(subchannel_bw > 0.0)) errs.push_back("subchannel_bw_hz: must be positive");
  if (!(noise_psd > 0.0)) errs.push_back("noise_psd: must be positive");
  if (!(p_max > 0.0)) errs.push_back("p_max_w: must be positive");
  if (!(p_ant > 0.0)) errs.push_back("p_ant_w: must be positive");
  if (!(delta >= 0.0)) errs.push_back("delta: must be non-negative");
  if (scenario < 1 || scenario > 4) errs.push_back("scenario: must be 1, 2, 3 or 4");
  if (!errs.empty()) throw ConfigError(errs);
}

double a2g_snr(const CVec& w, const CVec& v, const CMat& h0, int m, double subchannel_bw,
               double noise_psd) {
  const double vn = v.squaredNorm();
  if (!(vn > 0.0)) return 0.0;
  const cplx s = (v.adjoint() * h0 * w)(0, 0);
  return std::norm(s) / vn / (m * subchannel_bw * noise_psd);
}

CVec receive_bf(const CVec& u_a) { return u_a / std::sqrt(static_cast<double>(u_a.size())); }

InterferenceReport interference_check(const CVec& w, const ChannelSnapshot& snap, int m,
                                      double delta) {
  InterferenceReport r;
  r.per_tbs_w.reserve(snap.h.size());
  for (const auto& h : snap.h) {
    const double v = std::norm(h.dot(w)) / m;  // dot conjugates the first argument
    r.per_tbs_w.push_back(v);
    r.max_w = std::max(r.max_w, v);
  }
  if (r.max_w > 0.0 && std::isfinite(delta)) r.margin_db = lin2db(delta / r.max_w);
  return r;
}

// ---- scenarios 1 and 2 -----------------------------------------------------

SlotSolution solve_scenario1_slot(const SlotProblem& p, ExecPolicy policy) {
  p.validate();
  const ChannelSnapshot& s = *p.snapshot;
  if (s.n_p() != 1) throw InputError("solve_scenario1_slot: the plane must have a single antenna");

  PowerSweepInput in;
  in.n_sub = p.n_sub;
  in.subchannel_bw = p.subchannel_bw;
  in.noise_psd = p.noise_psd;
  in.delta = p.delta;
  in.max_coupling = s.coupling.empty() ? 0.0 : *std::max_element(s.coupling.begin(), s.coupling.end());
  in.p_max = p.p_max;
  in.gain = s.h0.squaredNorm();  // beta G^P G^A N_A with the matched receiver
  const Eigen::VectorXd r = power_sweep_rates(in, *p.rate, policy);

  int best = 1;
  for (int m = 2; m <= p.n_sub; ++m)
    if (r(m - 1) > r(best - 1)) best = m;

  SlotSolution out;
  out.m_star = best;
  const double pw = power_sweep_power(in, best);
  out.w = CVec::Constant(1, cplx(std::sqrt(pw), 0.0));
  out.v_tilde = receive_bf(s.u_a);
  out.snr_linear = pw * in.gain / p.noise(best);
  out.rate_bps = r(best - 1);
  out.upper_bound_bps = out.rate_bps;
  out.tx_power_w = pw;
  const InterferenceReport rep = interference_check(out.w, s, best, p.delta);
  out.max_interference_w = rep.max_w;
  out.interference_margin_db = rep.margin_db;
  out.rank1 = true;
  out.method = Method::ClosedForm;
  out.near_field = s.near_field;
  out.m_evaluated = p.n_sub;
  return out;
}

// ---- helpers -------------------------------------------------------------------

CMat objective_matrix(const ChannelSnapshot& snap) {
  if (snap.near_field) return snap.h0.adjoint() * snap.h0;
  const CVec c = snap.h0.adjoint() * snap.u_a / std::sqrt(static_cast<double>(snap.n_a()));
  return c * c.adjoint();
}

CVec power_limited_beamformer(const CVec& c, double p_max, double p_ant) {
  const Eigen::Index n = c.size();
  CVec w = CVec::Zero(n);
  if (n == 0) return w;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return std::abs(c(a)) > std::abs(c(b)); });

  Eigen::VectorXd pw = Eigen::VectorXd::Zero(n);
  if (p_max >= n * p_ant) {
    pw.setConstant(p_ant);
  } else {
    // p_m = min(p_ant, t |c_m|^2) with sum p_m = p_max
    double rest = c.squaredNorm();
    for (std::size_t k = 0; k <= idx.size(); ++k) {
      const double budget = p_max - static_cast<double>(k) * p_ant;
      if (k == idx.size() || !(rest > 0.0)) {
        for (std::size_t j = 0; j < k; ++j) pw(idx[j]) = p_ant;
        break;
      }
      const double t = budget / rest;
      if (t * std::norm(c(idx[k])) <= p_ant) {
        for (std::size_t j = 0; j < idx.size(); ++j)
          pw(idx[j]) = j < k ? p_ant : t * std::norm(c(idx[j]));
        break;
      }
      rest -= std::norm(c(idx[k]));
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(c(i));
    w(i) = a > 0.0 ? std::sqrt(pw(i)) * c(i) / a : cplx(std::sqrt(pw(i)), 0.0);
  }
  return w;
}

void NeighborCache::store(int m, int slot, const CVec& w) { by_m_[m][slot] = w; }

std::optional<CVec> NeighborCache::nearest(int m, int slot) const {
  const auto it = by_m_.find(m);
  if (it == by_m_.end() || it->second.empty()) return std::nullopt;
  const auto& slots = it->second;
  auto after = slots.lower_bound(slot);  // first >= slot
  if (after != slots.begin()) return std::prev(after)->second;
  if (after != slots.end() && after->first == slot) ++after;
  if (after != slots.end()) return after->second;
  return std::nullopt;
}

std::size_t NeighborCache::size() const {
  std::size_t n = 0;
  for (const auto& [m, s] : by_m_) n += s.size();
  return n;
}

// ---- per-slot optimizer ------------------------------------------------------

SlotOptimizer::SlotOptimizer(const SlotProblem& p, const OptimizerOptions& opt) : p_(p), opt_(opt) {
  p_.validate();
  const ChannelSnapshot& s = *p_.snapshot;
  c_ = objective_matrix(s);
  rank_one_c_ = !s.near_field;
  if (rank_one_c_) c_vec_ = s.h0.adjoint() * s.u_a / std::sqrt(static_cast<double>(s.n_a()));
  const Eigen::Index np = s.n_p();
  h_rows_.resize(static_cast<Eigen::Index>(s.h.size()), np);
  for (std::size_t i = 0; i < s.h.size(); ++i) h_rows_.row(static_cast<Eigen::Index>(i)) = s.h[i].adjoint();
  // A single transmit antenna has no separate per-antenna budget.
  p_ant_eff_ = np > 1 ? p_.p_ant : p_.p_max;
  if (rank_one_c_) {
    w_free_ = power_limited_beamformer(c_vec_, p_.p_max, p_ant_eff_);
    free_value_ = quad(c_, w_free_);
    free_max_int_ = h_rows_.rows() > 0 ? (h_rows_ * w_free_).cwiseAbs2().maxCoeff() : 0.0;
  }
}

double SlotOptimizer::scale_to_feasible(const CVec& w, int m) const {
  const double nw = w.squaredNorm();
  if (!(nw > 0.0)) return 0.0;
  double z = p_.p_max / nw;
  z = std::min(z, p_ant_eff_ / w.cwiseAbs2().maxCoeff());
  if (std::isfinite(p_.delta) && h_rows_.rows() > 0) {
    const double mi = (h_rows_ * w).cwiseAbs2().maxCoeff();
    if (mi > 0.0) z = std::min(z, m * p_.delta / mi);
  }
  return z;
}

RelaxedSolution SlotOptimizer::relax(int m) {
  if (auto it = relaxed_cache_.find(m); it != relaxed_cache_.end()) return it->second;
  RelaxedSolution r;
  r.m = m;
  if (rank_one_c_ && (!std::isfinite(p_.delta) || free_max_int_ <= m * p_.delta)) {
    r.w = w_free_ * w_free_.adjoint();
    r.value = r.bound = free_value_;
    r.rank = free_value_ > 0.0 ? 1 : 0;
    r.closed_form = true;
  } else {
    LinearSdp sdp;
    sdp.c = c_;
    sdp.trace_budget = p_.p_max;
    sdp.diag_bound = p_ant_eff_;
    if (std::isfinite(p_.delta)) {
      sdp.constraints.reserve(p_.snapshot->h.size());
      for (const auto& h : p_.snapshot->h) sdp.constraints.push_back(SdpConstraint::rank_one(h, m * p_.delta));
    }
    SdpOptions so = opt_.sdp;
    if (warm_ && so.algorithm == SdpAlgorithm::Admm) so.warm_start = &*warm_;
    const SdpSolution sol = solve_linear_sdp(sdp, so);
    ++sdp_solves_;
    r.w = sol.w;
    r.value = sol.objective;
    r.bound = sol.dual_bound;
    r.status = sol.status;
    r.rank = numerical_rank(sol.w, opt_.rank_tol);
    if (sol.status != SdpStatus::Optimal) {
      degraded_ = true;
      if (sol.status == SdpStatus::MaxIterations) {
        Eigen::SelfAdjointEigenSolver<CMat> es(c_, Eigen::EigenvaluesOnly);
        r.bound = std::max(r.bound, p_.p_max * es.eigenvalues().maxCoeff());
        r.analytic_fallback = true;
      }
    }
    warm_ = sol.w;
  }
  relaxed_cache_[m] = r;
  return r;
}

UpperBound SlotOptimizer::upper_bound(int m) {
  UpperBound u;
  u.relaxed = relax(m);
  u.snr = u.relaxed.bound / p_.noise(m);
  u.rate_bps = slot_rate(m, p_.subchannel_bw, p_.rate->upper_efficiency(u.snr));
  return u;
}

SlotOptimizer::Candidate SlotOptimizer::feasible(int m, const RelaxedSolution& relaxed,
                                                 const NeighborCache& cache) {
  const double noise = p_.noise(m);
  const RateModel& rate = *p_.rate;
  Candidate best;
  best.w = CVec::Zero(p_.snapshot->n_p());

  auto consider = [&](const CVec& w, Method method) {
    const double z = scale_to_feasible(w, m);
    CVec wf = w;
    if (z < 1.0) wf *= std::sqrt(z);  // exact feasibility
    const double snr = quad(c_, wf) / noise;
    const double r = slot_rate(m, p_.subchannel_bw, rate.efficiency(snr));
    if (r > best.rate_bps ||
        (r == best.rate_bps && method_priority(method) > method_priority(best.method))) {
      best.w = wf;
      best.rate_bps = r;
      best.snr = snr;
      best.method = method;
    }
  };

  // SNR caps in tr(C W) units; the cap-free entry admits the relaxation itself.
  std::vector<double> caps;
  if (rate.mode == RateMode::Mcs) {
    for (const auto& s : rate.feasible) {
      double cap = snr_cap(s);
      if (opt_.printed_l3) cap = std::pow((s.e_max + s.d) / s.a, 1.0 / s.c);
      caps.push_back(cap * noise);
    }
  }
  caps.push_back(kInf);

  if (relaxed.value > 0.0 && relaxed.rank == 1) {
    const CVec w0 = principal_factor(relaxed.w);
    const double v0 = quad(c_, w0);
    for (double k : caps) {
      const double s = (std::isfinite(k) && v0 > k) ? k / v0 : 1.0;
      consider(w0 * std::sqrt(s), Method::RankOneDirect);
    }
  } else if (relaxed.value > 0.0 && opt_.n_trials > 0) {
    const CMat f = psd_factor(relaxed.w);
    const Eigen::Index n = f.rows();
    const int r = std::max(1, numerical_rank(relaxed.w, 1e-12));
    const CMat fr = f.leftCols(std::min<Eigen::Index>(r, n));
    std::mt19937_64 rng(trial_seed(opt_.seed, p_.snapshot->slot, m));
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    CMat draws(fr.cols(), opt_.n_trials);
    for (Eigen::Index k = 0; k < draws.cols(); ++k)
      for (Eigen::Index i = 0; i < draws.rows(); ++i) draws(i, k) = std::polar(1.0, ang(rng));
    const TrialBatch tb = randomization_trials(fr, draws, c_, h_rows_, opt_.policy);

    const double l1 = std::min(p_ant_eff_, p_.p_max / static_cast<double>(n));
    for (Eigen::Index k = 0; k < draws.cols(); ++k) {
      const double mi = tb.max_interference(k);
      const double l2 = (std::isfinite(p_.delta) && mi > 0.0) ? m * p_.delta / mi : kInf;
      const double obj = tb.objective(k);
      for (double cap : caps) {
        const double l3 = (std::isfinite(cap) && obj > 0.0) ? cap / obj : kInf;
        const double l = std::min({l1, l2, l3});
        consider(tb.w.col(k) * std::sqrt(l), Method::Randomization);
      }
    }
  }

  if (auto nb = cache.nearest(m, p_.snapshot->slot)) {
    if (nb->size() == p_.snapshot->n_p() && nb->squaredNorm() > 0.0) {
      const double z = scale_to_feasible(*nb, m);
      consider(*nb * std::sqrt(z), Method::NeighborScaled);
    }
  }
  return best;
}

SlotSolution SlotOptimizer::sweep(NeighborCache& cache) {
  const ChannelSnapshot& s = *p_.snapshot;
  const int n = p_.n_sub;
  const RateModel& rate = *p_.rate;

  struct Eval {
    Candidate cand;
    int rank = 1;
  };
  std::map<int, Eval> evals;
  int best_m = 0;
  double best_rate = -1.0;

  auto evaluate = [&](int m) {
    if (evals.count(m)) return;
    const RelaxedSolution r = relax(m);
    Eval e;
    e.cand = feasible(m, r, cache);
    e.rank = r.rank;
    evals[m] = e;
    if (e.cand.rate_bps > best_rate || (e.cand.rate_bps == best_rate && m < best_m)) {
      best_rate = e.cand.rate_bps;
      best_m = m;
    }
  };

  const UpperBound ub = upper_bound(n);
  // V(M) <= V(N) for M <= N, so the true rate at M is at most M b f(V(N) / (M b N0)).
  const double vmax = ub.relaxed.bound;
  auto rate_bound = [&](int m) {
    return slot_rate(m, p_.subchannel_bw, rate.efficiency(vmax / p_.noise(m)));
  };
  auto worth = [&](int m) {
    if (m < 1 || m > n || evals.count(m)) return false;
    const double b = rate_bound(m);
    return b > best_rate || (b == best_rate && m < best_m);
  };

  evaluate(n);
  if (opt_.exhaustive_m) {
    for (int m = 1; m < n; ++m) evaluate(m);
  } else if (!opt_.full_band) {
    std::set<int> grid;
    for (long m = 1; m < n; m *= 2) grid.insert(static_cast<int>(m));
    if (rate.mode == RateMode::Mcs) {
      for (double g : rate.table.thresholds()) {
        const double mm = std::floor(vmax / (p_.subchannel_bw * p_.noise_psd * g));
        if (mm >= 1.0 && mm < n) grid.insert(static_cast<int>(mm));
      }
    }
    std::vector<int> order(grid.begin(), grid.end());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rate_bound(a) > rate_bound(b); });
    for (int m : order)
      if (worth(m)) evaluate(m);

    int step = std::max(1, static_cast<int>(std::lround(0.25 * best_m)));
    while (step >= 1) {
      const int centre = best_m;
      for (int m : {centre - step, centre + step})
        if (worth(m)) evaluate(m);
      if (best_m == centre) step /= 2;
    }
  }

  const Eval& e = evals.at(best_m);
  for (const auto& [m, ev] : evals)
    if (ev.cand.w.squaredNorm() > 0.0) cache.store(m, s.slot, ev.cand.w);

  SlotSolution out;
  out.m_star = best_m;
  out.w = e.cand.w;
  if (s.near_field) {
    const CVec y = s.h0 * out.w;
    out.v_tilde = y.norm() > 0.0 ? CVec(y / y.norm()) : receive_bf(s.u_a);
  } else {
    out.v_tilde = receive_bf(s.u_a);
  }
  out.rate_bps = e.cand.rate_bps;
  out.upper_bound_bps = ub.rate_bps;
  out.snr_linear = e.cand.snr;
  out.tx_power_w = out.w.squaredNorm();
  const InterferenceReport rep = interference_check(out.w, s, best_m, p_.delta);
  out.max_interference_w = rep.max_w;
  out.interference_margin_db = rep.margin_db;
  out.rank1 = e.rank <= 1;
  out.method = e.cand.method;
  out.sdp_degraded = degraded_;
  out.near_field = s.near_field;
  out.sdp_solves = sdp_solves_;
  out.m_evaluated = static_cast<int>(evals.size());
  return out;
}

UpperBound upper_bound_slot(const SlotProblem& p, int m, const OptimizerOptions& opt) {
  SlotOptimizer o(p, opt);
  return o.upper_bound(m);
}

SlotOptimizer::Candidate feasible_slot(const SlotProblem& p, int m, const RelaxedSolution& relaxed,
                                       const NeighborCache& cache, const OptimizerOptions& opt) {
  SlotOptimizer o(p, opt);
  return o.feasible(m, relaxed, cache);
}

SlotSolution sweep_M(const SlotProblem& p, NeighborCache& cache, const OptimizerOptions& opt) {
  if (p.scenario <= 2) return solve_scenario1_slot(p, opt.policy);
  SlotOptimizer o(p, opt);
  return o.sweep(cache);
}

}  // namespace a2g
