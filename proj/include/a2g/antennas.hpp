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

#include <optional>
#include <variant>
#include <vector>

#include "a2g/frames.hpp"

namespace a2g {

/// Parabolic sector pattern in the style of the 3GPP tri-sector model:
///   A_H = -min(12 (az/az_bw)^2, max_plane_att)
///   A_V = -min(12 ((el - tilt)/el_bw)^2, max_plane_att)
///   G   = boresight_gain - min(-(A_H + A_V), max_total_att)      [dBi]
struct SectorPattern {
  double boresight_gain_dbi = 17.7;
  double az_beamwidth_deg = 65.0;
  double el_beamwidth_deg = 7.0;
  double max_plane_att_db = 20.0;
  double max_total_att_db = 20.0;

  double gain_db(double azimuth_deg, double elevation_deg, double tilt_deg) const;
};

struct OmniAntenna {
  double gain_dbi = 0.0;
};

/// Single directional antenna, or `sectors` identical sectors evenly spaced in
/// azimuth (sector k boresight = orientation rotated by k*360/sectors).
struct DirectionalAntenna {
  Orientation orientation;
  double tilt_deg = 0.0;
  SectorPattern pattern;
  int sectors = 1;
};

/// Uniform planar array. Elements lie in the plane orthogonal to
/// `orientation.forward`; rows run along `orientation.up`, columns along the
/// left axis. Every element shares the same pattern (far-field assumption).
struct UpaAntenna {
  int rows = 1;
  int cols = 1;
  double spacing_m = 0.0;  // 0 selects half a wavelength
  Orientation orientation;
  double tilt_deg = 0.0;
  std::optional<SectorPattern> element_pattern;  // nullopt: omni element
  double omni_element_gain_dbi = 0.0;

  int element_count() const { return rows * cols; }
};

using AntennaModel = std::variant<OmniAntenna, DirectionalAntenna, UpaAntenna>;

/// Linear gain of the 3GPP-style tri-sector pattern (65 deg / 7 deg, 20 dB clamps).
double tri_sector_gain(double az_deg, double el_deg, double tilt_deg, double boresight_gain_dbi);

/// Element pattern defaults for UPA elements (8 dBi, wide beam).
SectorPattern default_upa_element_pattern();

/// Element offsets from the array centre. Throws InputError for non-UPA models.
std::vector<Vec3> element_positions(const AntennaModel& antenna, double wavelength_m);
std::vector<Vec3> element_positions(const UpaAntenna& upa, double wavelength_m);

int element_count(const AntennaModel& antenna);

/// Per-element linear directivity gain toward `direction` (need not be unit length).
double directivity_gain(const AntennaModel& antenna, const Vec3& direction);

/// Receive gain used in the interference constraint for a terrestrial base
/// station: element count times peak element gain for arrays, otherwise the
/// direction-dependent gain.
double tbs_gain_upper_bound(const AntennaModel& antenna, const Vec3& direction);

/// Peak linear gain of a single element of the model.
double peak_element_gain(const AntennaModel& antenna);

}  // namespace a2g
