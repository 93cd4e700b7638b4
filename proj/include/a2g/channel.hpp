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

#include <vector>

#include "a2g/geometry.hpp"
#include "a2g/kernels.hpp"

namespace a2g {

struct RadioBand {
  double carrier_hz = 2e9;
  double bandwidth_hz = 20e6;
  double attenuation_db_per_km = 0.01;

  double wavelength() const { return kSpeedOfLight / carrier_hz; }
  double carrier_mhz() const { return carrier_hz / 1e6; }
};

/// 32.5 + 20 log10(max(d, 75) * f_MHz / 1000) + L * d / 1000
double path_loss_db(double distance_m, double carrier_mhz, double attenuation_db_per_km);
double path_gain(double distance_m, const RadioBand& band);

/// Plane array pose: position of the array centre plus element offsets.
struct ArrayPlacement {
  Vec3 centre = Vec3::Zero();
  std::vector<Vec3> offsets;  // size 1 for single antennas
};

ArrayPlacement place_antenna(const AntennaModel& antenna, const Vec3& centre, double wavelength);

/// N_A x N_P matrix with entries sqrt(g) exp(-j 2 pi d_mn / lambda).
CMat a2g_channel(const ArrayPlacement& plane, const AntennaModel& plane_antenna,
                 const ArrayPlacement& abs, const AntennaModel& abs_antenna, const RadioBand& band,
                 ExecPolicy policy = ExecPolicy::Parallel);

/// Linear gain product beta_0 G^P G^A of the plane-to-ABS link.
double a2g_link_gain(const Vec3& plane, const AntennaModel& plane_antenna, const Vec3& abs,
                     const AntennaModel& abs_antenna, const RadioBand& band);

/// beta_i G^P_i G^T_i; the TBS side uses the array upper bound when applicable.
double tbs_coupling(const Vec3& plane, const AntennaModel& plane_antenna, const BaseStation& tbs,
                    const RadioBand& band);

CVec interference_vector(const ArrayPlacement& plane, const AntennaModel& plane_antenna,
                         const BaseStation& tbs, const RadioBand& band);

struct RankOneFactors {
  double link_gain = 0.0;
  CVec u_a;
  CVec u_p;
  double singular_ratio = 0.0;  // sigma_2 / sigma_1
};

/// Principal singular triplet, rescaled to ||u_a||^2 = N_A and ||u_p||^2 = N_P,
/// u_a[0] real and non-negative. Throws NearFieldError when sigma_2/sigma_1 > tol.
RankOneFactors rank_one_factors(const CMat& h0, double tolerance = 1e-3);

struct ChannelSnapshot {
  int slot = 0;
  double tau = 0.0;
  CMat h0;                       // N_A x N_P
  std::vector<CVec> h;           // interference vectors, one per TBS
  std::vector<double> coupling;  // beta_i G^P_i G^T_i
  CVec u_a;
  CVec u_p;
  double link_gain = 0.0;
  double singular_ratio = 0.0;
  bool near_field = false;  // rank-one test failed; optimizer uses MRC on H0^H H0

  int n_a() const { return static_cast<int>(h0.rows()); }
  int n_p() const { return static_cast<int>(h0.cols()); }
};

struct ChannelSetup {
  AntennaModel plane_antenna;
  RadioBand band;
  double far_field_tolerance = 1e-3;
  ExecPolicy policy = ExecPolicy::Parallel;
};

ChannelSnapshot build_snapshot(int slot, const SlotGeometry& geom, const NetworkLayout& layout,
                               const ChannelSetup& setup);

}  // namespace a2g
