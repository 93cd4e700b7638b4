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

#include "a2g/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef A2G_HAVE_OPENMP
#include <omp.h>
#endif

namespace a2g {

int parallel_thread_count() {
#ifdef A2G_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

inline cplx los_entry(const Vec3& a, const Vec3& b, double amplitude, double k) {
  const double d = (a - b).norm();
  // exp(-j k d) with the phase reduced first to keep sin/cos arguments small
  const double ph = std::fmod(k * d, 2.0 * kPi);
  return {amplitude * std::cos(ph), -amplitude * std::sin(ph)};
}

inline void los_column(const std::vector<Vec3>& rx, const Vec3& tx, double amplitude, double k,
                       cplx* col) {
  const std::size_t n = rx.size();
  for (std::size_t r = 0; r < n; ++r) col[r] = los_entry(rx[r], tx, amplitude, k);
}

inline void trial(const CMat& factor, const CMat& draws, const CMat& objective,
                  const CMat& interference, Eigen::Index k, TrialBatch& out) {
  CVec b = factor * draws.col(k);
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const double a = std::abs(b(i));
    b(i) = a > 0.0 ? b(i) / a : cplx(1.0, 0.0);
  }
  out.w.col(k) = b;
  out.objective(k) = std::max(0.0, (b.adjoint() * objective * b)(0, 0).real());
  if (interference.rows() > 0) {
    out.max_interference(k) = (interference * b).cwiseAbs2().maxCoeff();
  } else {
    out.max_interference(k) = 0.0;
  }
}

inline double sweep_rate(const PowerSweepInput& in, const RateModel& rate, int m) {
  const double q = power_sweep_power(in, m);
  const double noise = m * in.subchannel_bw * in.noise_psd;
  return slot_rate(m, in.subchannel_bw, rate.efficiency(q * in.gain / noise));
}

}  // namespace

void los_matrix(const std::vector<Vec3>& rx, const std::vector<Vec3>& tx, double amplitude,
                double wavelength, CMat& out, ExecPolicy policy) {
  const double k = 2.0 * kPi / wavelength;
  out.resize(static_cast<Eigen::Index>(rx.size()), static_cast<Eigen::Index>(tx.size()));
  const long cols = static_cast<long>(tx.size());
  if (policy == ExecPolicy::Serial) {
    for (long m = 0; m < cols; ++m) los_column(rx, tx[m], amplitude, k, out.col(m).data());
    return;
  }
#ifdef A2G_HAVE_OPENMP
  // Split over rows when there are few columns (single-antenna plane).
  if (cols >= 4) {
#pragma omp parallel for schedule(static)
    for (long m = 0; m < cols; ++m) los_column(rx, tx[m], amplitude, k, out.col(m).data());
  } else {
    const long rows = static_cast<long>(rx.size());
    for (long m = 0; m < cols; ++m) {
      cplx* col = out.col(m).data();
#pragma omp parallel for schedule(static)
      for (long r = 0; r < rows; ++r) col[r] = los_entry(rx[r], tx[m], amplitude, k);
    }
  }
#else
  for (long m = 0; m < cols; ++m) los_column(rx, tx[m], amplitude, k, out.col(m).data());
#endif
}

void los_vectors(const std::vector<Vec3>& tx, const std::vector<Vec3>& stations,
                 const std::vector<double>& amplitudes, double wavelength, std::vector<CVec>& out,
                 ExecPolicy policy) {
  const double k = 2.0 * kPi / wavelength;
  const long n = static_cast<long>(stations.size());
  out.assign(stations.size(), CVec(static_cast<Eigen::Index>(tx.size())));
  auto body = [&](long i) {
    cplx* v = out[i].data();
    for (std::size_t m = 0; m < tx.size(); ++m) v[m] = los_entry(tx[m], stations[i], amplitudes[i], k);
  };
  if (policy == ExecPolicy::Serial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef A2G_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) body(i);
#else
  for (long i = 0; i < n; ++i) body(i);
#endif
}

TrialBatch randomization_trials(const CMat& factor, const CMat& draws, const CMat& objective,
                                const CMat& interference, ExecPolicy policy) {
  TrialBatch out;
  const Eigen::Index n = factor.rows();
  const Eigen::Index t = draws.cols();
  out.w.resize(n, t);
  out.objective.resize(t);
  out.max_interference.resize(t);
  if (policy == ExecPolicy::Serial) {
    for (Eigen::Index k = 0; k < t; ++k) trial(factor, draws, objective, interference, k, out);
    return out;
  }
#ifdef A2G_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(t); ++k) trial(factor, draws, objective, interference, k, out);
#else
  for (Eigen::Index k = 0; k < t; ++k) trial(factor, draws, objective, interference, k, out);
#endif
  return out;
}

double power_sweep_power(const PowerSweepInput& in, int m) {
  if (std::isinf(in.delta) || !(in.max_coupling > 0.0)) return in.p_max;
  return std::min(m * in.delta / in.max_coupling, in.p_max);
}

Eigen::VectorXd power_sweep_rates(const PowerSweepInput& in, const RateModel& rate,
                                  ExecPolicy policy) {
  Eigen::VectorXd r(std::max(0, in.n_sub));
  const long n = in.n_sub;
  if (policy == ExecPolicy::Serial) {
    for (long m = 1; m <= n; ++m) r(m - 1) = sweep_rate(in, rate, static_cast<int>(m));
    return r;
  }
#ifdef A2G_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (long m = 1; m <= n; ++m) r(m - 1) = sweep_rate(in, rate, static_cast<int>(m));
#else
  for (long m = 1; m <= n; ++m) r(m - 1) = sweep_rate(in, rate, static_cast<int>(m));
#endif
  return r;
}

}  // namespace a2g
