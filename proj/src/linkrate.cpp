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

#include "a2g/linkrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace a2g {

McsTable::McsTable(std::vector<double> thresholds_db, std::vector<double> efficiencies)
    : thresholds_db_(std::move(thresholds_db)), efficiencies_(std::move(efficiencies)) {
  std::vector<std::string> errs;
  if (thresholds_db_.empty()) errs.push_back("mcs.thresholds_db: must not be empty");
  if (thresholds_db_.size() != efficiencies_.size())
    errs.push_back("mcs: thresholds_db and efficiencies differ in length");
  for (std::size_t i = 1; i < thresholds_db_.size(); ++i)
    if (!(thresholds_db_[i] > thresholds_db_[i - 1])) {
      errs.push_back("mcs.thresholds_db: must be strictly increasing");
      break;
    }
  for (std::size_t i = 0; i < efficiencies_.size(); ++i) {
    if (!(efficiencies_[i] > 0.0)) {
      errs.push_back("mcs.efficiencies: must be positive");
      break;
    }
    if (i > 0 && !(efficiencies_[i] > efficiencies_[i - 1])) {
      errs.push_back("mcs.efficiencies: must be strictly increasing");
      break;
    }
  }
  if (!errs.empty()) throw ConfigError(errs);
  thresholds_.reserve(thresholds_db_.size());
  for (double t : thresholds_db_) thresholds_.push_back(db2lin(t));
}

McsTable McsTable::lte_a() {
  return McsTable({-9.8, -6.1, -2.2, 1.6, 3.4, 5.4, 7.2, 9.1, 11.0, 12.9, 14.8, 16.8, 18.4, 20.2, 22.5},
                  {0.11, 0.33, 0.77, 1.33, 1.77, 2.22, 2.50, 3.05, 3.61, 4.16, 4.72, 5.16, 5.72, 6.27,
                   6.88});
}

double mcs_efficiency(double snr, const McsTable& table) {
  const auto& th = table.thresholds();
  // number of thresholds <= snr
  const auto it = std::upper_bound(th.begin(), th.end(), snr);
  const auto k = static_cast<std::size_t>(it - th.begin());
  return k == 0 ? 0.0 : table.efficiencies()[k - 1];
}

double surrogate_efficiency(double snr, const Surrogate& s) {
  return std::min(s.a * std::pow(std::max(snr, 0.0), s.c) + s.d, s.e_max);
}

double snr_cap(const Surrogate& s) {
  if (!(s.e_max > s.d)) throw ConfigError({"surrogate: e_max must exceed d"});
  return std::pow((s.e_max - s.d) / s.a, 1.0 / s.c);
}

bool validate_upper_bound(const Surrogate& s, const McsTable& table, int grid_points) {
  if (table.size() == 0) return true;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (surrogate_efficiency(table.thresholds()[i], s) < table.efficiencies()[i]) return false;
  if (surrogate_efficiency(0.0, s) < 0.0) return false;
  const double hi = 10.0 * table.thresholds().back();
  const double lo = table.thresholds().front() * 1e-3;
  const int n = std::max(2, grid_points);
  for (int k = 0; k < n; ++k) {
    const double g = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
    if (surrogate_efficiency(g, s) < mcs_efficiency(g, table)) return false;
  }
  return true;
}

Surrogate lte_upper_surrogate(double e_max) {
  return Surrogate{1.9, 0.25, 0.3, e_max, true};
}

std::vector<Surrogate> lte_feasible_surrogates(double e_max) {
  return {Surrogate{1.9, 0.25, 0.3, e_max, true}, Surrogate{4.0476, 0.185, -2.4405, e_max, false},
          Surrogate{0.93, 0.4, 0.3, e_max, false}, Surrogate{1.0, 0.37, 0.3, e_max, false}};
}

RateModel RateModel::lte_a() { return RateModel{}; }

RateModel RateModel::shannon() {
  RateModel r;
  r.mode = RateMode::Shannon;
  r.feasible.clear();
  return r;
}

RateModel RateModel::from_table(const McsTable& table) {
  RateModel r;
  r.table = table;
  r.upper = lte_upper_surrogate(table.e_max());
  r.feasible = lte_feasible_surrogates(table.e_max());
  return r;
}

double RateModel::efficiency(double snr) const {
  return mode == RateMode::Shannon ? std::log2(1.0 + std::max(snr, 0.0)) : mcs_efficiency(snr, table);
}

double RateModel::upper_efficiency(double snr) const {
  return mode == RateMode::Shannon ? std::log2(1.0 + std::max(snr, 0.0))
                                   : surrogate_efficiency(snr, upper);
}

double RateModel::upper_snr_cap() const {
  return mode == RateMode::Shannon ? std::numeric_limits<double>::infinity() : snr_cap(upper);
}

double RateModel::e_max() const {
  return mode == RateMode::Shannon ? std::numeric_limits<double>::infinity() : table.e_max();
}

std::string RateModel::name() const { return mode == RateMode::Shannon ? "shannon" : "mcs"; }

}  // namespace a2g
