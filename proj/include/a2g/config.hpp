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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "a2g/channel.hpp"
#include "a2g/geometry.hpp"
#include "a2g/linkrate.hpp"
#include "a2g/optimizer.hpp"

namespace a2g {

struct OutputConfig {
  std::string dir;             // empty: no files written
  bool plots = false;
  bool snapshot_dump = false;  // channel snapshots as JSON
  bool sdp_trace = false;      // solver iteration residuals as CSV
};

/// Fully resolved run description. Every field has a default; parse_config
/// only overrides what the document sets.
struct RunConfig {
  std::string band_name = "microwave";
  RadioBand band;
  double subchannel_bw = 180e3;
  int n_sub = 111;
  int scenario = 4;

  SlotGrid grid;
  double delta_w = 1e-13;  // +inf disables the interference constraint
  double p_max_w = 1.0;
  double p_ant_w = 0.2;
  double noise_psd_w = 3.981071705534972e-21;

  std::string mcs_mode = "lte-a";
  RateModel rate;

  DescentTrajectory trajectory;
  double bs_height = 30.0;

  std::uint64_t seed = 1;
  int tbs_count = 120;
  Region region;
  std::string layout_file;

  AntennaModel plane_antenna;
  AntennaModel abs_antenna;
  AntennaModel tbs_antenna;

  OptimizerOptions optimizer;
  double far_field_tolerance = 1e-3;
  bool capacity_only = false;

  OutputConfig output;

  /// Resolved configuration, echoed into the run summary.
  nlohmann::json echo;
};

/// Builds a config from a JSON document. Band and scenario defaults are
/// applied first, then every explicit field. Unknown keys and malformed values
/// are collected and thrown together as one ConfigError.
RunConfig parse_config(const nlohmann::json& document);

/// Reads and parses a config file; I/O and syntax problems become ConfigError.
RunConfig load_config(const std::string& path);

/// Reads `{"tbs": [{"position": [x,y,z], "antenna": {...}}, ...], "abs": {...}}`.
NetworkLayout load_layout(const std::string& path, const RunConfig& cfg);

/// "-100 dBm", -100, "inf" -> watts.
double parse_delta(const nlohmann::json& value, const std::string& path,
                   std::vector<std::string>& errors);

/// JSON descriptor <-> antenna model.
AntennaModel parse_antenna(const nlohmann::json& j, const std::string& path,
                           std::vector<std::string>& errors);
nlohmann::json antenna_to_json(const AntennaModel& a);

/// Antenna models used by default for a scenario and band.
AntennaModel default_plane_antenna(int scenario);
AntennaModel default_abs_antenna(int scenario, const DescentTrajectory& traj);
AntennaModel default_tbs_antenna(const std::string& band_name);

}  // namespace a2g
