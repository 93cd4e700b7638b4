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

// Serial reference vs OpenMP path of every kernel on planner-sized inputs.
// Arg 0 selects the path: 0 serial, 1 parallel.

#include <random>

#include <benchmark/benchmark.h>

#include "a2g/antennas.hpp"
#include "a2g/kernels.hpp"

namespace {

using namespace a2g;

ExecPolicy policy_of(const benchmark::State& st) {
  return st.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

std::vector<Vec3> upa(int rows, int cols, const Vec3& centre, double lambda) {
  UpaAntenna u;
  u.rows = rows;
  u.cols = cols;
  std::vector<Vec3> out;
  for (const Vec3& o : element_positions(u, lambda)) out.push_back(centre + o);
  return out;
}

void BM_LosMatrix(benchmark::State& st) {
  const double lambda = kSpeedOfLight / 28e9;
  const auto rx = upa(32, 32, Vec3(-2000, 0, 30), lambda);
  const auto tx = upa(5, 5, Vec3(8000, 0, 500), lambda);
  CMat out;
  for (auto _ : st) {
    los_matrix(rx, tx, 1e-6, lambda, out, policy_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void BM_LosVectors(benchmark::State& st) {
  const double lambda = kSpeedOfLight / 28e9;
  const auto tx = upa(5, 5, Vec3(8000, 0, 500), lambda);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-15000, 80000), uy(-15000, 15000);
  std::vector<Vec3> stations;
  std::vector<double> amp;
  for (int i = 0; i < 120; ++i) {
    stations.emplace_back(ux(rng), uy(rng), 30.0);
    amp.push_back(1e-7);
  }
  std::vector<CVec> out;
  for (auto _ : st) {
    los_vectors(tx, stations, amp, lambda, out, policy_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void BM_RandomizationTrials(benchmark::State& st) {
  const int n = 25, k = 120, trials = 100;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  auto rand_mat = [&](int r, int c) {
    CMat m(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) m(i, j) = cplx(g(rng), g(rng));
    return m;
  };
  const CMat factor = rand_mat(n, n);
  const CMat draws = rand_mat(n, trials);
  const CMat cvec = rand_mat(n, 1);
  const CMat c = cvec * cvec.adjoint();
  const CMat h = rand_mat(k, n);
  for (auto _ : st) {
    TrialBatch b = randomization_trials(factor, draws, c, h, policy_of(st));
    benchmark::DoNotOptimize(b.objective.data());
  }
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

void BM_PowerSweep(benchmark::State& st) {
  PowerSweepInput in;
  in.n_sub = 5555;
  in.noise_psd = 3.981071705534972e-21;
  in.delta = 1e-13;
  in.max_coupling = 1e-12;
  in.gain = 1e-9;
  const RateModel rate = RateModel::lte_a();
  for (auto _ : st) {
    Eigen::VectorXd r = power_sweep_rates(in, rate, policy_of(st));
    benchmark::DoNotOptimize(r.data());
  }
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel");
}

BENCHMARK(BM_LosMatrix)->Arg(0)->Arg(1);
BENCHMARK(BM_LosVectors)->Arg(0)->Arg(1);
BENCHMARK(BM_RandomizationTrials)->Arg(0)->Arg(1);
BENCHMARK(BM_PowerSweep)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
