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

// The parallel paths must reproduce the serial reference bit for bit.

#include <random>

#include <doctest.h>

#include "a2g/kernels.hpp"
#include "oracles.hpp"

using namespace a2g;

namespace {

std::vector<Vec3> cloud(std::mt19937_64& rng, int n, double scale, const Vec3& centre) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back(centre + Vec3(u(rng), u(rng), u(rng)));
  return out;
}

}  // namespace

TEST_CASE("los_matrix serial and parallel agree") {
  std::mt19937_64 rng(41);
  for (int tx_n : {1, 3, 25}) {
    const auto rx = cloud(rng, 300, 0.1, Vec3(-2000, 0, 30));
    const auto tx = cloud(rng, tx_n, 0.05, Vec3(9000, 0, 600));
    CMat a, b;
    los_matrix(rx, tx, 2e-6, 0.0107, a, ExecPolicy::Serial);
    los_matrix(rx, tx, 2e-6, 0.0107, b, ExecPolicy::Parallel);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("los_vectors serial and parallel agree") {
  std::mt19937_64 rng(42);
  const auto tx = cloud(rng, 25, 0.05, Vec3(9000, 0, 600));
  const auto st = cloud(rng, 120, 20000.0, Vec3(20000, 0, 30));
  std::vector<double> amp(120, 1e-7);
  std::vector<CVec> a, b;
  los_vectors(tx, st, amp, 0.15, a, ExecPolicy::Serial);
  los_vectors(tx, st, amp, 0.15, b, ExecPolicy::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("randomization trials serial and parallel agree") {
  std::mt19937_64 rng(43);
  const CMat f = oracle::random_cmat(rng, 25, 25), d = oracle::random_cmat(rng, 25, 100);
  const CVec c = oracle::random_cvec(rng, 25);
  const CMat obj = c * c.adjoint();
  const CMat h = oracle::random_cmat(rng, 40, 25);
  const TrialBatch a = randomization_trials(f, d, obj, h, ExecPolicy::Serial);
  const TrialBatch b = randomization_trials(f, d, obj, h, ExecPolicy::Parallel);
  CHECK((a.w - b.w).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.objective - b.objective).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.max_interference - b.max_interference).cwiseAbs().maxCoeff() == 0.0);
  // unit-modulus candidates
  CHECK((a.w.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("power sweep serial and parallel agree") {
  PowerSweepInput in;
  in.n_sub = 5555;
  in.noise_psd = 3.981071705534972e-21;
  in.delta = 1e-13;
  in.max_coupling = 1e-12;
  in.gain = 1e-9;
  const RateModel r = RateModel::lte_a();
  const Eigen::VectorXd a = power_sweep_rates(in, r, ExecPolicy::Serial);
  const Eigen::VectorXd b = power_sweep_rates(in, r, ExecPolicy::Parallel);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(power_sweep_power(in, 1) == doctest::Approx(0.1));
  CHECK(power_sweep_power(in, 100) == doctest::Approx(1.0));
  CHECK(parallel_thread_count() >= 1);
}
