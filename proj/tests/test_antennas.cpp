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

#include "a2g/antennas.hpp"

using namespace a2g;

namespace {

// Direct transcription of the parabolic pattern, in dB.
double pattern_db(double az, double el, double tilt, double g0) {
  const double ah = -std::min(12.0 * (az / 65.0) * (az / 65.0), 20.0);
  const double av = -std::min(12.0 * ((el - tilt) / 7.0) * ((el - tilt) / 7.0), 20.0);
  return g0 - std::min(-(ah + av), 20.0);
}

}  // namespace

TEST_CASE("tri-sector pattern values") {
  CHECK(tri_sector_gain(65.0, 3.0, 3.0, 17.7) == doctest::Approx(std::pow(10.0, 0.57)));
  CHECK(tri_sector_gain(0.0, 0.0, 0.0, 17.7) == doctest::Approx(std::pow(10.0, 1.77)));
  // total attenuation is clamped at 20 dB
  CHECK(tri_sector_gain(180.0, 80.0, 0.0, 17.7) == doctest::Approx(std::pow(10.0, -0.23)));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> az(-180, 180), el(-90, 90), tilt(-10, 10);
  for (int k = 0; k < 2000; ++k) {
    const double a = az(rng), e = el(rng), t = tilt(rng);
    CHECK(lin2db(tri_sector_gain(a, e, t, 17.7)) == doctest::Approx(pattern_db(a, e, t, 17.7)).epsilon(1e-12));
  }
}

TEST_CASE("sector gain peaks at boresight under dense sampling") {
  SectorPattern p;
  double best = -1e9;
  for (double a = -180; a <= 180; a += 0.5)
    for (double e = -90; e <= 90; e += 0.25) best = std::max(best, p.gain_db(a, e, 2.0));
  CHECK(best <= p.boresight_gain_dbi + 1e-12);
  CHECK(p.gain_db(0.0, 2.0, 2.0) == doctest::Approx(p.boresight_gain_dbi));
}

TEST_CASE("directional antennas take the best of their sectors") {
  DirectionalAntenna d;
  d.sectors = 3;
  d.orientation = Orientation::horizontal(90.0);
  const double peak = std::pow(10.0, 1.77);
  for (double az : {90.0, 210.0, 330.0}) {
    const double r = az * kPi / 180.0;
    CHECK(directivity_gain(d, Vec3(std::cos(r), std::sin(r), 0.0)) == doctest::Approx(peak));
  }
  // halfway between two sectors: 60 degrees off each
  const double r = 150.0 * kPi / 180.0;
  CHECK(directivity_gain(d, Vec3(std::cos(r), std::sin(r), 0.0)) ==
        doctest::Approx(std::pow(10.0, (17.7 - 12.0 * (60.0 / 65.0) * (60.0 / 65.0)) / 10.0)));
  DirectionalAntenna single;
  CHECK(directivity_gain(single, Vec3(-1, 0, 0)) == doctest::Approx(std::pow(10.0, -0.23)));
}

TEST_CASE("UPA element layout") {
  UpaAntenna u;
  u.rows = 5;
  u.cols = 4;
  u.orientation.forward = Vec3(0, 0, -1);
  u.orientation.up = Vec3(-1, 0, 0);
  const double lambda = 0.15;
  const auto pos = element_positions(u, lambda);
  REQUIRE(pos.size() == 20);
  Vec3 sum = Vec3::Zero();
  for (const auto& p : pos) {
    sum += p;
    CHECK(std::abs(p.z()) < 1e-12);  // array plane is orthogonal to the boresight
  }
  CHECK(sum.norm() < 1e-12);
  CHECK((pos[1] - pos[0]).norm() == doctest::Approx(lambda / 2));
  CHECK((pos[4] - pos[0]).norm() == doctest::Approx(lambda / 2));
  // rows run along the up axis (here the flight direction -x)
  CHECK((pos[4] - pos[0]).normalized().dot(Vec3(-1, 0, 0)) == doctest::Approx(1.0));
  CHECK(element_count(AntennaModel(u)) == 20);
  CHECK(element_count(AntennaModel(OmniAntenna{})) == 1);
  CHECK_THROWS_AS(element_positions(AntennaModel(OmniAntenna{}), lambda), InputError);
}

TEST_CASE("TBS array gain bound") {
  UpaAntenna u;
  u.rows = 16;
  u.cols = 16;
  u.element_pattern = default_upa_element_pattern();
  CHECK(tbs_gain_upper_bound(u, Vec3(1, 0, 0)) == doctest::Approx(256.0 * std::pow(10.0, 0.8)));
  CHECK(tbs_gain_upper_bound(u, Vec3(1, 0, 0)) == doctest::Approx(1615.25).epsilon(1e-4));
  // no steering vector gathers more than N times the element gain
  const double lambda = 0.0107;
  const auto pos = element_positions(u, lambda);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    const Vec3 d = Vec3(g(rng), g(rng), g(rng)).normalized();
    CVec a(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) a(i) = std::polar(1.0, 2 * kPi / lambda * d.dot(pos[i]));
    CVec w(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) w(i) = cplx(g(rng), g(rng));
    w.normalize();
    const double bf = std::max(std::norm(a.dot(w)), a.squaredNorm());  // includes the matched beam
    CHECK(directivity_gain(u, d) * bf <= tbs_gain_upper_bound(u, d) * (1 + 1e-12));
  }
  DirectionalAntenna tri;
  tri.sectors = 3;
  CHECK(tbs_gain_upper_bound(tri, Vec3(1, 0, 0)) == doctest::Approx(directivity_gain(tri, Vec3(1, 0, 0))));
}

TEST_CASE("UPA element gain is evaluated in the array frame") {
  UpaAntenna u;
  u.element_pattern = default_upa_element_pattern();
  u.orientation.forward = Vec3(0, 0, -1);
  u.orientation.up = Vec3(-1, 0, 0);
  CHECK(directivity_gain(u, Vec3(0, 0, -1)) == doctest::Approx(std::pow(10.0, 0.8)));
  // 45 degrees toward the flight direction
  CHECK(lin2db(directivity_gain(u, Vec3(-1, 0, -1))) ==
        doctest::Approx(8.0 - 12.0 * (45.0 / 65.0) * (45.0 / 65.0)));
  u.element_pattern.reset();
  u.omni_element_gain_dbi = 3.0;
  CHECK(directivity_gain(u, Vec3(0, 1, 0)) == doctest::Approx(std::pow(10.0, 0.3)));
}
