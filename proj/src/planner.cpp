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

#include "a2g/planner.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace a2g {

double capacity_volume_bits(const RunConfig& cfg) {
  return cfg.band.bandwidth_hz * cfg.grid.window * cfg.rate.e_max();
}

NetworkLayout build_layout(const RunConfig& cfg) {
  if (!cfg.layout_file.empty()) return load_layout(cfg.layout_file, cfg);
  NetworkLayout layout;
  layout.bs_height = cfg.bs_height;
  layout.abs.position = default_abs_position(cfg.trajectory, cfg.bs_height);
  layout.abs.antenna = cfg.abs_antenna;
  layout.tbs = generate_tbs_layout(cfg.seed, cfg.tbs_count, cfg.region, cfg.tbs_antenna, cfg.bs_height);
  return layout;
}

SlotProblem make_slot_problem(const RunConfig& cfg, const ChannelSnapshot& snap) {
  SlotProblem p;
  p.snapshot = &snap;
  p.scenario = cfg.scenario;
  p.n_sub = cfg.n_sub;
  p.subchannel_bw = cfg.subchannel_bw;
  p.noise_psd = cfg.noise_psd_w;
  p.p_max = cfg.p_max_w;
  p.p_ant = cfg.p_ant_w;
  p.delta = cfg.delta_w;
  p.rate = &cfg.rate;
  return p;
}

RunSummary run_plan(const RunConfig& cfg, const PlanHooks& hooks) {
  const auto t0 = std::chrono::steady_clock::now();
  RunSummary out;
  out.seed = cfg.seed;
  out.v_cap_bits = capacity_volume_bits(cfg);

  const NetworkLayout layout = build_layout(cfg);
  ChannelSetup setup;
  setup.plane_antenna = cfg.plane_antenna;
  setup.band = cfg.band;
  setup.far_field_tolerance = cfg.far_field_tolerance;
  setup.policy = cfg.optimizer.policy;

  const std::vector<SlotBlock> blocks = evaluated_slots(cfg.grid);
  NeighborCache cache;
  out.records.reserve(blocks.size());

  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const SlotBlock& b = blocks[k];
    const SlotGeometry geom = slot_geometry(b, cfg.grid, cfg.trajectory, layout);
    const ChannelSnapshot snap = build_snapshot(b.index, geom, layout, setup);
    if (hooks.on_snapshot) hooks.on_snapshot(snap);
    const SlotProblem p = make_slot_problem(cfg, snap);

    SlotRecord r;
    r.index = b.index;
    r.tau = b.tau_hi;
    r.weight_s = b.weight();
    r.near_field = snap.near_field;

    if (cfg.capacity_only) {
      // Upper bound only; no feasible transmit vector is produced.
      if (cfg.scenario <= 2) {
        r.upper_bound_bps = solve_scenario1_slot(p, cfg.optimizer.policy).upper_bound_bps;
      } else {
        SlotOptimizer o(p, cfg.optimizer);
        const UpperBound ub = o.upper_bound(cfg.n_sub);
        r.upper_bound_bps = ub.rate_bps;
        r.snr_linear = ub.snr;
        r.sdp_solves = o.sdp_solves();
      }
      r.m_star = cfg.n_sub;
    } else {
      const SlotSolution s = sweep_M(p, cache, cfg.optimizer);
      if (hooks.on_solution) hooks.on_solution(p, s);
      r.m_star = s.m_star;
      r.rate_bps = s.rate_bps;
      r.upper_bound_bps = s.upper_bound_bps;
      r.snr_linear = s.snr_linear;
      r.tx_power_w = s.tx_power_w;
      r.max_interference_w = s.max_interference_w;
      r.rank1 = s.rank1;
      r.method = s.method;
      r.degraded = s.sdp_degraded;
      r.sdp_solves = s.sdp_solves;
    }

    out.v_data_bits += r.rate_bps * r.weight_s;
    out.v_upper_bits += r.upper_bound_bps * r.weight_s;
    out.degraded_slots += r.degraded ? 1 : 0;
    out.near_field_slots += r.near_field ? 1 : 0;
    out.sdp_solves += r.sdp_solves;
    out.records.push_back(r);
    if (hooks.on_slot) hooks.on_slot(out.records.back(), k + 1, blocks.size());
  }

  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<std::pair<double, double>> cumulative_volume(const RunSummary& s) {
  // Records run from the start of transmission toward touchdown; a window of
  // length T_s covers the blocks with tau_hi <= T_s.
  std::vector<std::pair<double, double>> out;
  out.reserve(s.records.size() + 1);
  out.emplace_back(0.0, 0.0);
  double acc = 0.0;
  for (auto it = s.records.rbegin(); it != s.records.rend(); ++it) {
    acc += it->rate_bps * it->weight_s;
    out.emplace_back(it->tau, acc);
  }
  return out;
}

}  // namespace a2g
