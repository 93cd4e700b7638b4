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
#include <functional>
#include <utility>
#include <vector>

#include "a2g/config.hpp"

namespace a2g {

inline constexpr double kBitsPerGigabyte = 8e9;
inline double bits_to_gb(double bits) { return bits / kBitsPerGigabyte; }

struct SlotRecord {
  int index = 0;
  double tau = 0.0;       // seconds before touchdown, start of the block
  double weight_s = 0.0;  // seconds of descent the block stands for
  int m_star = 0;
  double rate_bps = 0.0;
  double upper_bound_bps = 0.0;
  double snr_linear = 0.0;
  double tx_power_w = 0.0;
  double max_interference_w = 0.0;
  bool rank1 = true;
  Method method = Method::None;
  bool degraded = false;
  bool near_field = false;
  int sdp_solves = 0;
};

struct RunSummary {
  double v_data_bits = 0.0;
  double v_cap_bits = 0.0;
  double v_upper_bits = 0.0;
  std::vector<SlotRecord> records;  // ordered by decreasing tau
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  int degraded_slots = 0;
  int near_field_slots = 0;
  long sdp_solves = 0;
};

struct PlanHooks {
  std::function<void(const SlotRecord&, std::size_t done, std::size_t total)> on_slot;
  std::function<void(const ChannelSnapshot&)> on_snapshot;
  /// Full per-slot solution with the problem it solves (not called in capacity-only mode).
  std::function<void(const SlotProblem&, const SlotSolution&)> on_solution;
};

/// B T_s e_max; +inf in Shannon mode.
double capacity_volume_bits(const RunConfig& cfg);

/// Seeded TBS layout, or the layout file when one is configured.
NetworkLayout build_layout(const RunConfig& cfg);

SlotProblem make_slot_problem(const RunConfig& cfg, const ChannelSnapshot& snap);

RunSummary run_plan(const RunConfig& cfg, const PlanHooks& hooks = {});

/// (T_s, V_data(T_s)) for every block boundary; the window is anchored at
/// touchdown so shorter windows are suffixes of the run.
std::vector<std::pair<double, double>> cumulative_volume(const RunSummary& s);

}  // namespace a2g
