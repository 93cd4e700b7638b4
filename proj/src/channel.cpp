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

#include "a2g/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace a2g {

NearFieldError::NearFieldError(double ratio, double tolerance)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "channel is not rank one: sigma2/sigma1 = " << ratio << " > " << tolerance;
        return os.str();
      }()),
      ratio_(ratio) {}

double path_loss_db(double distance_m, double carrier_mhz, double attenuation_db_per_km) {
  return 32.5 + 20.0 * std::log10(std::max(distance_m, 75.0) * carrier_mhz / 1000.0) +
         attenuation_db_per_km * distance_m / 1000.0;
}

double path_gain(double distance_m, const RadioBand& band) {
  return db2lin(-path_loss_db(distance_m, band.carrier_mhz(), band.attenuation_db_per_km));
}

ArrayPlacement place_antenna(const AntennaModel& antenna, const Vec3& centre, double wavelength) {
  ArrayPlacement p;
  p.centre = centre;
  if (std::holds_alternative<UpaAntenna>(antenna)) {
    p.offsets = element_positions(antenna, wavelength);
  } else {
    p.offsets = {Vec3::Zero()};
  }
  return p;
}

namespace {

std::vector<Vec3> absolute(const ArrayPlacement& p) {
  std::vector<Vec3> out;
  out.reserve(p.offsets.size());
  for (const auto& o : p.offsets) out.push_back(p.centre + o);
  return out;
}

}  // namespace

double a2g_link_gain(const Vec3& plane, const AntennaModel& plane_antenna, const Vec3& abs,
                     const AntennaModel& abs_antenna, const RadioBand& band) {
  const Vec3 d = abs - plane;
  return path_gain(d.norm(), band) * directivity_gain(plane_antenna, d) *
         directivity_gain(abs_antenna, -d);
}

double tbs_coupling(const Vec3& plane, const AntennaModel& plane_antenna, const BaseStation& tbs,
                    const RadioBand& band) {
  const Vec3 d = tbs.position - plane;
  return path_gain(d.norm(), band) * directivity_gain(plane_antenna, d) *
         tbs_gain_upper_bound(tbs.antenna, -d);
}

CMat a2g_channel(const ArrayPlacement& plane, const AntennaModel& plane_antenna,
                 const ArrayPlacement& abs, const AntennaModel& abs_antenna, const RadioBand& band,
                 ExecPolicy policy) {
  const double g = a2g_link_gain(plane.centre, plane_antenna, abs.centre, abs_antenna, band);
  CMat h;
  los_matrix(absolute(abs), absolute(plane), std::sqrt(g), band.wavelength(), h, policy);
  return h;
}

CVec interference_vector(const ArrayPlacement& plane, const AntennaModel& plane_antenna,
                         const BaseStation& tbs, const RadioBand& band) {
  std::vector<CVec> out;
  los_vectors(absolute(plane), {tbs.position},
              {std::sqrt(tbs_coupling(plane.centre, plane_antenna, tbs, band))}, band.wavelength(),
              out, ExecPolicy::Serial);
  return out.front();
}

namespace {

// Principal triplet from the Gram matrix of the smaller side.
RankOneFactors principal_triplet(const CMat& h0) {
  const Eigen::Index na = h0.rows();
  const Eigen::Index np = h0.cols();
  if (na == 0 || np == 0) throw InputError("rank_one_factors: empty matrix");
  RankOneFactors f;
  CVec ua, up;
  double s1 = 0.0, s2 = 0.0;
  if (np <= na) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h0.adjoint() * h0);
    const auto& ev = es.eigenvalues();
    s1 = std::sqrt(std::max(ev(np - 1), 0.0));
    s2 = np > 1 ? std::sqrt(std::max(ev(np - 2), 0.0)) : 0.0;
    up = es.eigenvectors().col(np - 1);
    ua = s1 > 0.0 ? CVec(h0 * up / s1) : CVec::Unit(na, 0);
  } else {
    Eigen::SelfAdjointEigenSolver<CMat> es(h0 * h0.adjoint());
    const auto& ev = es.eigenvalues();
    s1 = std::sqrt(std::max(ev(na - 1), 0.0));
    s2 = na > 1 ? std::sqrt(std::max(ev(na - 2), 0.0)) : 0.0;
    ua = es.eigenvectors().col(na - 1);
    up = s1 > 0.0 ? CVec(h0.adjoint() * ua / s1) : CVec::Unit(np, 0);
  }
  // u_a[0] real and non-negative; the same rotation on u_p keeps u_a u_p^H.
  if (std::abs(ua(0)) > 0.0) {
    const cplx ph = std::conj(ua(0)) / std::abs(ua(0));
    ua *= ph;
    up *= ph;
  }
  f.u_a = ua * std::sqrt(static_cast<double>(na));
  f.u_p = up * std::sqrt(static_cast<double>(np));
  f.link_gain = s1 * s1 / static_cast<double>(na * np);
  f.singular_ratio = s1 > 0.0 ? s2 / s1 : 0.0;
  return f;
}

}  // namespace

RankOneFactors rank_one_factors(const CMat& h0, double tolerance) {
  RankOneFactors f = principal_triplet(h0);
  if (f.singular_ratio > tolerance) throw NearFieldError(f.singular_ratio, tolerance);
  return f;
}

ChannelSnapshot build_snapshot(int slot, const SlotGeometry& geom, const NetworkLayout& layout,
                               const ChannelSetup& setup) {
  const double lambda = setup.band.wavelength();
  ChannelSnapshot s;
  s.slot = slot;
  s.tau = geom.abs.tau;

  const ArrayPlacement plane = place_antenna(setup.plane_antenna, geom.abs.plane, lambda);
  const ArrayPlacement abs = place_antenna(layout.abs.antenna, layout.abs.position, lambda);
  s.h0 = a2g_channel(plane, setup.plane_antenna, abs, layout.abs.antenna, setup.band, setup.policy);

  // Interference vectors: each TBS sees the plane at its own closest endpoint.
  const std::size_t k = layout.tbs.size();
  s.coupling.resize(k);
  s.h.resize(k);
  if (k > 0) {
    const std::vector<Vec3> offsets = place_antenna(setup.plane_antenna, Vec3::Zero(), lambda).offsets;
    bool same_position = true;
    for (const auto& g : geom.tbs) same_position = same_position && (g.plane == geom.tbs.front().plane);
    std::vector<Vec3> stations(k);
    std::vector<double> amp(k);
    for (std::size_t i = 0; i < k; ++i) {
      s.coupling[i] = tbs_coupling(geom.tbs[i].plane, setup.plane_antenna, layout.tbs[i], setup.band);
      stations[i] = layout.tbs[i].position;
      amp[i] = std::sqrt(s.coupling[i]);
    }
    if (same_position) {
      std::vector<Vec3> tx;
      for (const auto& o : offsets) tx.push_back(geom.tbs.front().plane + o);
      los_vectors(tx, stations, amp, lambda, s.h, setup.policy);
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Vec3> tx;
        for (const auto& o : offsets) tx.push_back(geom.tbs[i].plane + o);
        std::vector<CVec> one;
        los_vectors(tx, {stations[i]}, {amp[i]}, lambda, one, ExecPolicy::Serial);
        s.h[i] = std::move(one.front());
      }
    }
  }

  const RankOneFactors f = principal_triplet(s.h0);
  s.u_a = f.u_a;
  s.u_p = f.u_p;
  s.link_gain = f.link_gain;
  s.singular_ratio = f.singular_ratio;
  s.near_field = f.singular_ratio > setup.far_field_tolerance;
  return s;
}

}  // namespace a2g
