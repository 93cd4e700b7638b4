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

#include "a2g/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace a2g {

// ---- frames -------------------------------------------------------------

Orientation Orientation::horizontal(double azimuth_deg) {
  const double a = deg2rad(azimuth_deg);
  Orientation o;
  o.forward = Vec3(std::cos(a), std::sin(a), 0.0);
  o.up = Vec3(0.0, 0.0, 1.0);
  return o;
}

Orientation Orientation::rotated(double angle_deg) const {
  const Vec3 k = up.normalized();
  const double a = deg2rad(angle_deg);
  // Rodrigues
  Vec3 f = forward * std::cos(a) + k.cross(forward) * std::sin(a) +
           k * k.dot(forward) * (1.0 - std::cos(a));
  Orientation o;
  o.forward = f;
  o.up = up;
  return o;
}

AngularDirection angles_in_frame(const Vec3& direction, const Orientation& frame) {
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw InputError("angles_in_frame: zero direction");
  const Vec3 d = direction / norm;
  const Vec3 up = frame.up.normalized();
  Vec3 fh = frame.forward - up * up.dot(frame.forward);
  if (fh.norm() < 1e-12) throw InputError("angles_in_frame: boresight parallel to the up axis");
  fh.normalize();
  const Vec3 left = up.cross(fh);

  AngularDirection out;
  out.elevation_deg = rad2deg(std::asin(std::clamp(d.dot(up), -1.0, 1.0)));
  const double x = d.dot(fh);
  const double y = d.dot(left);
  if (std::abs(x) < 1e-15 && std::abs(y) < 1e-15) {
    out.azimuth_deg = 0.0;  // along the up axis, azimuth undefined
  } else {
    out.azimuth_deg = rad2deg(std::atan2(y, x));
    if (out.azimuth_deg <= -180.0) out.azimuth_deg += 360.0;
  }
  return out;
}

AngularDirection relative_angles(const Vec3& observer, const Orientation& frame, const Vec3& target) {
  const Vec3 d = target - observer;
  if (d.norm() == 0.0) throw InputError("relative_angles: observer and target coincide");
  return angles_in_frame(d, frame);
}

AngularDirection relative_angles(const Vec3& observer, const Vec3& boresight, const Vec3& target) {
  Orientation o;
  o.forward = boresight;
  o.up = Vec3(0.0, 0.0, 1.0);
  return relative_angles(observer, o, target);
}

// ---- trajectory ---------------------------------------------------------

void DescentTrajectory::validate() const {
  std::vector<std::string> errs;
  if (!(pitch_deg > 0.0 && pitch_deg < 90.0)) errs.push_back("trajectory.pitch_deg: must be in (0, 90)");
  if (!(vertical_velocity < 0.0)) errs.push_back("trajectory.vertical_velocity: must be negative");
  if (!(runway_length > 0.0)) errs.push_back("trajectory.runway_length: must be positive");
  if (!(cruise_altitude > 0.0)) errs.push_back("trajectory.cruise_altitude: must be positive");
  if (!errs.empty()) throw ConfigError(errs);
}

Vec3 plane_position(double tau, const DescentTrajectory& traj) {
  const double z = std::min(std::abs(traj.vertical_velocity) * std::max(tau, 0.0), traj.cruise_altitude);
  return Vec3(z / std::tan(deg2rad(traj.pitch_deg)), 0.0, z);
}

Vec3 default_abs_position(const DescentTrajectory& traj, double bs_height) {
  return Vec3(-traj.runway_length / 2.0, 0.0, bs_height);
}

// ---- layout ---------------------------------------------------------------

namespace {

AntennaModel face_track(const AntennaModel& proto, const Vec3& pos) {
  // Boresight perpendicular to the x axis, toward y = 0.
  const double az = pos.y() > 0.0 ? -90.0 : 90.0;
  AntennaModel a = proto;
  if (auto* d = std::get_if<DirectionalAntenna>(&a)) {
    d->orientation = Orientation::horizontal(az);
  } else if (auto* u = std::get_if<UpaAntenna>(&a)) {
    u->orientation = Orientation::horizontal(az);
  }
  return a;
}

}  // namespace

std::vector<BaseStation> generate_tbs_layout(std::uint64_t seed, int count, const Region& region,
                                             const AntennaModel& tbs_antenna, double bs_height) {
  std::vector<std::string> errs;
  if (count < 0) errs.push_back("layout.tbs_count: must be non-negative");
  if (!(region.x_max > region.x_min) || !(region.y_max > region.y_min))
    errs.push_back("layout.region: rectangle has zero area");
  if (!errs.empty()) throw ConfigError(errs);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(region.x_min, region.x_max);
  std::uniform_real_distribution<double> uy(region.y_min, region.y_max);
  std::vector<BaseStation> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    BaseStation bs;
    bs.position = Vec3(x, y, bs_height);
    bs.antenna = face_track(tbs_antenna, bs.position);
    out.push_back(std::move(bs));
  }
  return out;
}

// ---- slots ----------------------------------------------------------------

void SlotGrid::validate() const {
  std::vector<std::string> errs;
  if (!(slot_duration > 0.0)) errs.push_back("grid.slot_duration_s: must be positive");
  if (!(window >= 0.0)) errs.push_back("transmission_window_s: must be non-negative");
  if (decimation < 1) errs.push_back("decimation: must be a positive integer");
  if (refine_factor < 1) errs.push_back("grid.refine_factor: must be a positive integer");
  if (!(refine_window >= 0.0)) errs.push_back("grid.refine_window_s: must be non-negative");
  if (slot_duration > 0.0 && window >= 0.0) {
    const double n = window / slot_duration;
    if (std::abs(n - std::round(n)) > 1e-6 * std::max(1.0, n))
      errs.push_back("transmission_window_s: must be a whole number of slots");
  }
  if (!errs.empty()) throw ConfigError(errs);
}

long SlotGrid::physical_slot_count() const {
  return std::lround(window / slot_duration);
}

std::vector<SlotBlock> evaluated_slots(const SlotGrid& grid) {
  grid.validate();
  const long n = grid.physical_slot_count();
  const long refine = std::min(n, std::lround(grid.refine_window / grid.slot_duration));
  const long fine = std::max(1, grid.decimation / grid.refine_factor);
  const long coarse = grid.decimation;

  // Built outward from touchdown, then reversed into time order.
  std::vector<std::pair<long, long>> spans;
  long j = 0;
  while (j < n) {
    const bool in_refine = j < refine;
    long next = j + (in_refine ? fine : coarse);
    if (in_refine) next = std::min(next, refine);
    next = std::min(next, n);
    spans.emplace_back(j, next);
    j = next;
  }
  std::reverse(spans.begin(), spans.end());
  std::vector<SlotBlock> blocks;
  blocks.reserve(spans.size());
  for (std::size_t k = 0; k < spans.size(); ++k) {
    SlotBlock b;
    b.index = static_cast<int>(k);
    b.tau_lo = static_cast<double>(spans[k].first) * grid.slot_duration;
    b.tau_hi = static_cast<double>(spans[k].second) * grid.slot_duration;
    blocks.push_back(b);
  }
  return blocks;
}

LinkGeometry link_geometry(double tau_a, double tau_b, const DescentTrajectory& traj,
                           const Vec3& station) {
  const Vec3 pa = plane_position(tau_a, traj);
  const Vec3 pb = plane_position(tau_b, traj);
  const double da = (pa - station).norm();
  const double db = (pb - station).norm();
  LinkGeometry g;
  if (db < da) {
    g.tau = tau_b;
    g.plane = pb;
    g.distance = db;
  } else {
    g.tau = tau_a;
    g.plane = pa;
    g.distance = da;
  }
  if (!(g.distance > 0.0)) throw InputError("link_geometry: station lies on the trajectory");
  return g;
}

SlotGeometry slot_geometry(const SlotBlock& block, const SlotGrid& grid,
                           const DescentTrajectory& traj, const NetworkLayout& layout) {
  const double hi = block.tau_hi;
  const double lo = std::max(0.0, hi - grid.slot_duration);
  SlotGeometry s;
  s.abs = link_geometry(lo, hi, traj, layout.abs.position);
  s.tbs.reserve(layout.tbs.size());
  for (const auto& t : layout.tbs) s.tbs.push_back(link_geometry(lo, hi, traj, t.position));
  return s;
}

}  // namespace a2g
