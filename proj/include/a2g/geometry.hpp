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
#include <vector>

#include "a2g/antennas.hpp"

namespace a2g {

/// Straight descent toward the touchdown point at the origin. The plane flies
/// along -x; the runway occupies x in [-R, 0].
struct DescentTrajectory {
  double pitch_deg = 3.0;
  double vertical_velocity = -12.7;  // m/s, negative while descending
  double runway_length = 4000.0;     // m
  double cruise_altitude = 12000.0;  // m, caps the altitude

  void validate() const;
};

/// Plane position `tau` seconds before touchdown.
Vec3 plane_position(double tau, const DescentTrajectory& traj);

struct BaseStation {
  Vec3 position = Vec3::Zero();
  AntennaModel antenna;
};

struct NetworkLayout {
  BaseStation abs;
  std::vector<BaseStation> tbs;
  double bs_height = 30.0;
};

/// Rectangle in the x-y plane where terrestrial stations are scattered.
struct Region {
  double x_min = -15000.0;
  double x_max = 80000.0;
  double y_min = -15000.0;
  double y_max = 15000.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

/// The airport station sits at the runway midpoint, (-R/2, 0, h).
Vec3 default_abs_position(const DescentTrajectory& traj, double bs_height);

/// Seeded uniform placement of `count` stations inside `region` at height
/// `bs_height`. Directional stations get their first sector pointed
/// perpendicular to the x axis, toward the descent-path ground track.
/// Throws ConfigError for a degenerate region or negative count.
std::vector<BaseStation> generate_tbs_layout(std::uint64_t seed, int count, const Region& region,
                                             const AntennaModel& tbs_antenna, double bs_height);

/// Time discretisation. One evaluated block stands for `decimation` physical
/// slots, except inside the final `refine_window` seconds where the stride is
/// divided by `refine_factor`. Blocks are anchored at touchdown.
struct SlotGrid {
  double slot_duration = 1e-3;  // s
  double window = 300.0;        // s
  int decimation = 1000;
  double refine_window = 30.0;  // s
  int refine_factor = 10;

  void validate() const;
  long physical_slot_count() const;
};

struct SlotBlock {
  int index = 0;       // 0 at the start of transmission
  double tau_lo = 0.0;  // block covers [tau_lo, tau_hi] before touchdown
  double tau_hi = 0.0;
  double weight() const { return tau_hi - tau_lo; }
};

/// Evaluated blocks from tau = window down to touchdown.
std::vector<SlotBlock> evaluated_slots(const SlotGrid& grid);

/// Geometry of one plane-to-station link for a slot, at the slot endpoint that
/// minimises the distance.
struct LinkGeometry {
  double tau = 0.0;
  Vec3 plane = Vec3::Zero();
  double distance = 0.0;
};

struct SlotGeometry {
  LinkGeometry abs;
  std::vector<LinkGeometry> tbs;
};

/// Infimum-distance geometry for the representative physical slot of `block`
/// (its first slot, i.e. [tau_hi - dt, tau_hi]).
LinkGeometry link_geometry(double tau_a, double tau_b, const DescentTrajectory& traj,
                           const Vec3& station);
SlotGeometry slot_geometry(const SlotBlock& block, const SlotGrid& grid,
                           const DescentTrajectory& traj, const NetworkLayout& layout);

}  // namespace a2g
