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

#include "a2g/antennas.hpp"

#include <algorithm>
#include <cmath>

namespace a2g {

double SectorPattern::gain_db(double azimuth_deg, double elevation_deg, double tilt_deg) const {
  const double ah = -std::min(12.0 * std::pow(azimuth_deg / az_beamwidth_deg, 2), max_plane_att_db);
  const double av =
      -std::min(12.0 * std::pow((elevation_deg - tilt_deg) / el_beamwidth_deg, 2), max_plane_att_db);
  return boresight_gain_dbi - std::min(-(av + ah), max_total_att_db);
}

double tri_sector_gain(double az_deg, double el_deg, double tilt_deg, double boresight_gain_dbi) {
  SectorPattern p;
  p.boresight_gain_dbi = boresight_gain_dbi;
  return db2lin(p.gain_db(az_deg, el_deg, tilt_deg));
}

SectorPattern default_upa_element_pattern() {
  SectorPattern p;
  p.boresight_gain_dbi = 8.0;
  p.az_beamwidth_deg = 65.0;
  p.el_beamwidth_deg = 65.0;
  p.max_plane_att_db = 30.0;
  p.max_total_att_db = 30.0;
  return p;
}

std::vector<Vec3> element_positions(const UpaAntenna& upa, double wavelength_m) {
  if (upa.rows < 1 || upa.cols < 1) throw InputError("element_positions: empty array");
  const double s = upa.spacing_m > 0.0 ? upa.spacing_m : wavelength_m / 2.0;
  const Vec3 f = upa.orientation.forward.normalized();
  Vec3 u = upa.orientation.up - f * f.dot(upa.orientation.up);
  if (u.norm() < 1e-12) throw InputError("element_positions: up axis parallel to boresight");
  u.normalize();
  const Vec3 l = u.cross(f);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(upa.rows) * upa.cols);
  const double r0 = (upa.rows - 1) / 2.0;
  const double c0 = (upa.cols - 1) / 2.0;
  for (int r = 0; r < upa.rows; ++r)
    for (int c = 0; c < upa.cols; ++c) out.push_back((r - r0) * s * u + (c - c0) * s * l);
  return out;
}

std::vector<Vec3> element_positions(const AntennaModel& antenna, double wavelength_m) {
  const auto* upa = std::get_if<UpaAntenna>(&antenna);
  if (!upa) throw InputError("element_positions: antenna is not a planar array");
  return element_positions(*upa, wavelength_m);
}

int element_count(const AntennaModel& antenna) {
  if (const auto* upa = std::get_if<UpaAntenna>(&antenna)) return upa->element_count();
  return 1;
}

namespace {

double directional_gain(const DirectionalAntenna& d, const Vec3& direction) {
  const int n = std::max(1, d.sectors);
  double best = 0.0;
  for (int k = 0; k < n; ++k) {
    const Orientation o = k == 0 ? d.orientation : d.orientation.rotated(360.0 * k / n);
    const AngularDirection a = angles_in_frame(direction, o);
    best = std::max(best, db2lin(d.pattern.gain_db(a.azimuth_deg, a.elevation_deg, d.tilt_deg)));
  }
  return best;
}

}  // namespace

double directivity_gain(const AntennaModel& antenna, const Vec3& direction) {
  if (const auto* o = std::get_if<OmniAntenna>(&antenna)) return db2lin(o->gain_dbi);
  if (const auto* d = std::get_if<DirectionalAntenna>(&antenna)) return directional_gain(*d, direction);
  const auto& u = std::get<UpaAntenna>(antenna);
  if (!u.element_pattern) return db2lin(u.omni_element_gain_dbi);
  const AngularDirection a = angles_in_frame(direction, u.orientation);
  return db2lin(u.element_pattern->gain_db(a.azimuth_deg, a.elevation_deg, u.tilt_deg));
}

double peak_element_gain(const AntennaModel& antenna) {
  if (const auto* o = std::get_if<OmniAntenna>(&antenna)) return db2lin(o->gain_dbi);
  if (const auto* d = std::get_if<DirectionalAntenna>(&antenna))
    return db2lin(d->pattern.boresight_gain_dbi);
  const auto& u = std::get<UpaAntenna>(antenna);
  return u.element_pattern ? db2lin(u.element_pattern->boresight_gain_dbi)
                           : db2lin(u.omni_element_gain_dbi);
}

double tbs_gain_upper_bound(const AntennaModel& antenna, const Vec3& direction) {
  if (const auto* u = std::get_if<UpaAntenna>(&antenna))
    return u->element_count() * peak_element_gain(antenna);
  return directivity_gain(antenna, direction);
}

}  // namespace a2g
