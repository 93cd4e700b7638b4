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

#include <ostream>
#include <string>

#include <json.hpp>

#include "a2g/planner.hpp"

namespace a2g {

inline constexpr const char* kSlotCsvHeader =
    "tau_s,M_star,rate_bps,upper_bound_bps,snr_db,tx_power_w,max_interference_dbm,rank1,method";

void write_slot_csv(std::ostream& os, const RunSummary& s);
nlohmann::json summary_json(const RunSummary& s, const RunConfig& cfg);
nlohmann::json snapshot_json(const ChannelSnapshot& snap);

/// Cumulative volume against T_s as a standalone SVG document.
void write_volume_svg(std::ostream& os, const RunSummary& s, const RunConfig& cfg);

/// Fails with std::runtime_error unless `dir` exists (or can be created) and is writable.
void ensure_output_dir(const std::string& dir);

/// slots.csv, summary.json and optionally volume.svg under cfg.output.dir.
void emit_outputs(const RunSummary& s, const RunConfig& cfg);

}  // namespace a2g
