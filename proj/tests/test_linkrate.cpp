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

#include <doctest.h>

#include "a2g/linkrate.hpp"
#include "oracles.hpp"

using namespace a2g;

TEST_CASE("LTE-A staircase") {
  const McsTable t = McsTable::lte_a();
  REQUIRE(t.size() == 15);
  CHECK(t.e_max() == doctest::Approx(6.88));
  CHECK(mcs_efficiency(0.0, t) == 0.0);
  CHECK(mcs_efficiency(db2lin(-9.81), t) == 0.0);
  CHECK(mcs_efficiency(db2lin(-9.8), t) == doctest::Approx(0.11));
  CHECK(mcs_efficiency(db2lin(12.0), t) == doctest::Approx(3.61));
  CHECK(mcs_efficiency(db2lin(22.5), t) == doctest::Approx(6.88));
  CHECK(mcs_efficiency(1e9, t) == doctest::Approx(6.88));
}

TEST_CASE("malformed tables are rejected") {
  CHECK_THROWS_AS(McsTable({1.0, 0.0}, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(McsTable({0.0, 1.0}, {2.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(McsTable({0.0}, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(McsTable({}, {}), ConfigError);
}

TEST_CASE("surrogate caps match bisection") {
  const Surrogate up = lte_upper_surrogate();
  CHECK(snr_cap(up) == doctest::Approx(oracle::bisect_snr_cap(1.9, 0.25, 0.3, 6.88)).epsilon(1e-10));
  CHECK(lin2db(snr_cap(up)) == doctest::Approx(21.6).epsilon(0.01));
  for (const Surrogate& s : lte_feasible_surrogates())
    CHECK(snr_cap(s) == doctest::Approx(oracle::bisect_snr_cap(s.a, s.c, s.d, s.e_max)).epsilon(1e-10));
  CHECK(surrogate_efficiency(1e6, up) == doctest::Approx(6.88));
}

TEST_CASE("upper surrogate dominates the table") {
  const McsTable t = McsTable::lte_a();
  CHECK(validate_upper_bound(lte_upper_surrogate(), t));
  CHECK_FALSE(validate_upper_bound(Surrogate{1.0, 0.25, 0.0, 6.88, true}, t));
  // dense independent check
  for (double db = -30.0; db <= 40.0; db += 0.001) {
    const double g = db2lin(db);
    REQUIRE(surrogate_efficiency(g, lte_upper_surrogate()) >= mcs_efficiency(g, t));
  }
}

TEST_CASE("rate models") {
  const RateModel lte = RateModel::lte_a();
  const RateModel sh = RateModel::shannon();
  CHECK(sh.efficiency(3.0) == doctest::Approx(2.0));
  CHECK(std::isinf(sh.e_max()));
  CHECK(std::isinf(sh.upper_snr_cap()));
  CHECK(lte.upper_efficiency(1.0) == doctest::Approx(2.2));
  CHECK(lte.efficiency(db2lin(5.5)) == doctest::Approx(2.22));
  CHECK(slot_rate(111, 180e3, 6.88) == doctest::Approx(111 * 180e3 * 6.88));
  CHECK(lte.feasible.size() == 4);
}
