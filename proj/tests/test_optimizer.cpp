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

#include <cmath>
#include <random>

#include <doctest.h>

#include "a2g/config.hpp"
#include "a2g/optimizer.hpp"
#include "a2g/planner.hpp"
#include "oracles.hpp"

using namespace a2g;

namespace {

struct Fixture {
  RunConfig cfg;
  NetworkLayout layout;
  std::vector<SlotBlock> blocks;
  ChannelSetup setup;

  explicit Fixture(const char* band, int scenario, int tbs = 30) {
    cfg = parse_config({{"band", band}, {"scenario", scenario}, {"layout", {{"tbs_count", tbs}}}});
    layout = build_layout(cfg);
    blocks = evaluated_slots(cfg.grid);
    setup.plane_antenna = cfg.plane_antenna;
    setup.band = cfg.band;
  }
  ChannelSnapshot snapshot(std::size_t k) const {
    return build_snapshot(blocks[k].index, slot_geometry(blocks[k], cfg.grid, cfg.trajectory, layout), layout,
                          setup);
  }
};

void check_constraints(const SlotProblem& p, const CVec& w, int m) {
  const double tol = 1e-9;
  CHECK(w.squaredNorm() <= p.p_max * (1 + tol));
  if (w.size() > 1)
    for (Eigen::Index i = 0; i < w.size(); ++i) CHECK(std::norm(w(i)) <= p.p_ant * (1 + tol));
  if (std::isfinite(p.delta))
    for (const auto& h : p.snapshot->h) CHECK(std::norm(h.dot(w)) / m <= p.delta * (1 + tol));
}

}  // namespace

TEST_CASE("SNR does not depend on the receive vector scale") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int na : {1, 4, 64}) {
    const CMat h0 = oracle::random_cmat(rng, na, 3);
    const CVec w = oracle::random_cvec(rng, 3), v = oracle::random_cvec(rng, na);
    const cplx alpha(u(rng) + 0.1, u(rng));
    const double a = a2g_snr(w, v, h0, 7, 180e3, 4e-21);
    const double b = a2g_snr(w, alpha * v, h0, 7, 180e3, 4e-21);
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
  }
}

TEST_CASE("matched receiver dominates random receivers") {
  std::mt19937_64 rng(32);
  const CVec ua = oracle::random_cvec(rng, 16), up = oracle::random_cvec(rng, 4);
  const CMat h0 = ua * up.adjoint();
  const CVec w = oracle::random_cvec(rng, 4);
  const double best = a2g_snr(w, receive_bf(ua), h0, 1, 1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const CVec v = oracle::random_cvec(rng, 16);
    CHECK(a2g_snr(w, v, h0, 1, 1.0, 1.0) <= best * (1 + 1e-12));
  }
}

TEST_CASE("single-antenna sweep matches brute force") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> lg(-13.0, -9.0), lk(-14.0, -10.0);
  const RateModel rate = RateModel::lte_a();
  for (int trial = 0; trial < 10; ++trial) {
    ChannelSnapshot s;
    const double gain = std::pow(10.0, lg(rng));
    const double kappa = std::pow(10.0, lk(rng));
    s.h0 = CMat::Constant(1, 1, cplx(std::sqrt(gain), 0.0));
    s.u_a = CVec::Ones(1);
    s.u_p = CVec::Ones(1);
    s.h = {CVec::Constant(1, cplx(std::sqrt(kappa), 0.0))};
    s.coupling = {kappa};
    SlotProblem p;
    p.snapshot = &s;
    p.scenario = 1;
    p.n_sub = 16;
    p.rate = &rate;
    const SlotSolution sol = solve_scenario1_slot(p);
    const auto ref = oracle::grid_search_scenario1(16, p.subchannel_bw, p.noise_psd, p.delta, kappa, p.p_max, gain,
                                                   rate.table.thresholds(), rate.table.efficiencies(), 2000);
    CHECK(sol.m_star == ref.m);
    CHECK(sol.rate_bps == ref.rate);
    CHECK(std::abs(sol.tx_power_w - ref.power) <= ref.power_step * (1 + 1e-9));
  }
}

TEST_CASE("power-limited beamformer beats random feasible vectors") {
  std::mt19937_64 rng(34);
  const CVec c = oracle::random_cvec(rng, 25);
  const CVec w = power_limited_beamformer(c, 1.0, 0.2);
  CHECK(w.squaredNorm() <= 1.0 + 1e-12);
  CHECK(w.cwiseAbs2().maxCoeff() <= 0.2 + 1e-12);
  const double best = std::norm(c.dot(w));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    CVec x = oracle::random_cvec(rng, 25);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) *= u(rng);
    x *= std::min(1.0 / x.squaredNorm(), 0.2 / x.cwiseAbs2().maxCoeff());
    CHECK(std::norm(c.dot(x)) <= best * (1 + 1e-12));
  }
  const CVec all = power_limited_beamformer(c, 10.0, 0.2);
  CHECK(all.cwiseAbs2().minCoeff() == doctest::Approx(0.2));
}

TEST_CASE("neighbor cache prefers the previous slot") {
  NeighborCache cache;
  cache.store(4, 10, CVec::Constant(1, 1.0));
  cache.store(4, 14, CVec::Constant(1, 2.0));
  CHECK(cache.nearest(4, 12)->coeff(0) == cplx(1.0, 0.0));
  CHECK(cache.nearest(4, 9)->coeff(0) == cplx(1.0, 0.0));
  CHECK(cache.nearest(4, 20)->coeff(0) == cplx(2.0, 0.0));
  CHECK_FALSE(cache.nearest(5, 12).has_value());
  CHECK(cache.size() == 2);
}

TEST_CASE("array sweep is feasible and sandwiched by the bound") {
  Fixture fx("microwave", 4, 30);
  fx.cfg.n_sub = 16;
  for (std::size_t k : {std::size_t{0}, std::size_t{150}, std::size_t{400}}) {
    const ChannelSnapshot s = fx.snapshot(k);
    for (double delta : {1e-13, 1e-16}) {
      SlotProblem p = make_slot_problem(fx.cfg, s);
      p.delta = delta;
      NeighborCache cache;
      const SlotSolution sol = sweep_M(p, cache, fx.cfg.optimizer);
      CHECK(sol.rate_bps <= sol.upper_bound_bps * (1 + 1e-9));
      check_constraints(p, sol.w, sol.m_star);
      CHECK(sol.rate_bps == doctest::Approx(slot_rate(sol.m_star, p.subchannel_bw,
                                                       p.rate->efficiency(sol.snr_linear))));
    }
  }
}

TEST_CASE("pruned subchannel search matches the exhaustive one") {
  Fixture fx("mmwave", 4, 30);
  fx.cfg.n_sub = 16;
  for (std::size_t k : {std::size_t{20}, std::size_t{200}}) {
    const ChannelSnapshot s = fx.snapshot(k);
    const SlotProblem p = make_slot_problem(fx.cfg, s);
    OptimizerOptions ex = fx.cfg.optimizer;
    ex.exhaustive_m = true;
    NeighborCache c1, c2;
    const SlotSolution a = sweep_M(p, c1, fx.cfg.optimizer);
    const SlotSolution b = sweep_M(p, c2, ex);
    CHECK(a.rate_bps == doctest::Approx(b.rate_bps).epsilon(1e-12));
    CHECK(b.m_evaluated == 16);
  }
}

TEST_CASE("interference-free slots use the closed form") {
  Fixture fx("mmwave", 4, 5);
  const ChannelSnapshot s = fx.snapshot(300);
  SlotProblem p = make_slot_problem(fx.cfg, s);
  p.delta = std::numeric_limits<double>::infinity();
  SlotOptimizer o(p, fx.cfg.optimizer);
  const RelaxedSolution r = o.relax(p.n_sub);
  CHECK(r.closed_form);
  CHECK(o.sdp_solves() == 0);
  const UpperBound ub = o.upper_bound(p.n_sub);
  CHECK(ub.rate_bps >= 0.0);
}
