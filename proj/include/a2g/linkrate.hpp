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

#include <string>
#include <vector>

#include "a2g/types.hpp"

namespace a2g {

/// Step function from per-subchannel SNR to spectral efficiency. Thresholds are
/// kept in dB (as configured) and linear (as used).
class McsTable {
 public:
  McsTable() = default;
  /// Throws ConfigError unless both lists are non-empty, equally long and strictly increasing.
  McsTable(std::vector<double> thresholds_db, std::vector<double> efficiencies);

  /// LTE-A table, 15 levels, e_max = 6.88 bps/Hz.
  static McsTable lte_a();

  const std::vector<double>& thresholds_db() const { return thresholds_db_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<double>& efficiencies() const { return efficiencies_; }
  double e_max() const { return efficiencies_.empty() ? 0.0 : efficiencies_.back(); }
  std::size_t size() const { return efficiencies_.size(); }

 private:
  std::vector<double> thresholds_db_;
  std::vector<double> thresholds_;
  std::vector<double> efficiencies_;
};

/// 0 below the first threshold, right-continuous at every threshold.
double mcs_efficiency(double snr, const McsTable& table);

/// min(a snr^c + d, e_max), concave for a > 0, 0 < c < 1.
struct Surrogate {
  double a = 1.9;
  double c = 0.25;
  double d = 0.3;
  double e_max = 6.88;
  bool is_upper_bound = false;
};

double surrogate_efficiency(double snr, const Surrogate& s);

/// ((e_max - d)/a)^(1/c). Throws ConfigError when e_max <= d.
double snr_cap(const Surrogate& s);

/// Checks s >= table on a log-spaced grid over [0, 10 * last threshold] and at
/// every threshold.
bool validate_upper_bound(const Surrogate& s, const McsTable& table, int grid_points = 20000);

/// min(1.9 snr^0.25 + 0.3, e_max)
Surrogate lte_upper_surrogate(double e_max = 6.88);

/// The four distinct concave fits used when constructing feasible beamformers.
std::vector<Surrogate> lte_feasible_surrogates(double e_max = 6.88);

enum class RateMode { Mcs, Shannon };

/// Efficiency function together with the surrogates used by the optimizer.
/// In Shannon mode every surrogate is log2(1 + snr) and there is no cap.
struct RateModel {
  RateMode mode = RateMode::Mcs;
  McsTable table = McsTable::lte_a();
  Surrogate upper = lte_upper_surrogate();
  std::vector<Surrogate> feasible = lte_feasible_surrogates();

  static RateModel lte_a();
  static RateModel shannon();
  static RateModel from_table(const McsTable& table);

  double efficiency(double snr) const;
  double upper_efficiency(double snr) const;
  /// Cap of the upper surrogate, +inf in Shannon mode.
  double upper_snr_cap() const;
  /// +inf in Shannon mode.
  double e_max() const;
  std::string name() const;
};

/// M b e
inline double slot_rate(int subchannels, double subchannel_bw, double efficiency) {
  return static_cast<double>(subchannels) * subchannel_bw * efficiency;
}

}  // namespace a2g
