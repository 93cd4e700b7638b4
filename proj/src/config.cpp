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

#include "a2g/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace a2g {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> items)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "invalid configuration";
        for (const auto& i : items) os << "\n  " << i;
        return os.str();
      }()),
      items_(std::move(items)) {}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collects problems instead of stopping at the first one.
class Reader {
 public:
  Reader(const json& j, std::string path, std::vector<std::string>& errors)
      : j_(j), path_(std::move(path)), errors_(errors) {
    if (!j_.is_object()) errors_.push_back(path_ + ": expected an object");
  }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }
  std::string at(const char* key) const { return path_ + "/" + key; }
  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void number(const char* key, double& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (v.is_number()) {
      out = v.get<double>();
      if (!std::isfinite(out)) errors_.push_back(at(key) + ": must be finite");
    } else {
      errors_.push_back(at(key) + ": expected a number");
    }
  }
  void integer(const char* key, int& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (v.is_number_integer()) out = v.get<int>();
    else errors_.push_back(at(key) + ": expected an integer");
  }
  void uint64(const char* key, std::uint64_t& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0))
      out = v.get<std::uint64_t>();
    else errors_.push_back(at(key) + ": expected a non-negative integer");
  }
  void boolean(const char* key, bool& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (v.is_boolean()) out = v.get<bool>();
    else errors_.push_back(at(key) + ": expected true or false");
  }
  void string(const char* key, std::string& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (v.is_string()) out = v.get<std::string>();
    else errors_.push_back(at(key) + ": expected a string");
  }
  void vec3(const char* key, Vec3& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number()) {
      out = Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    } else {
      errors_.push_back(at(key) + ": expected [x, y, z]");
    }
  }
  void mark(const char* key) { seen_.insert(key); }

  // Unknown keys are errors.
  void finish() {
    if (!j_.is_object()) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) errors_.push_back(path_ + "/" + it.key() + ": unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

SectorPattern parse_pattern(Reader& r, SectorPattern p) {
  r.number("gain_dbi", p.boresight_gain_dbi);
  r.number("az_beamwidth_deg", p.az_beamwidth_deg);
  r.number("el_beamwidth_deg", p.el_beamwidth_deg);
  r.number("max_plane_att_db", p.max_plane_att_db);
  r.number("max_total_att_db", p.max_total_att_db);
  return p;
}

json pattern_json(const SectorPattern& p) {
  return json{{"gain_dbi", p.boresight_gain_dbi},
              {"az_beamwidth_deg", p.az_beamwidth_deg},
              {"el_beamwidth_deg", p.el_beamwidth_deg},
              {"max_plane_att_db", p.max_plane_att_db},
              {"max_total_att_db", p.max_total_att_db}};
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

SectorPattern plane_directional_pattern() {
  SectorPattern p;
  p.boresight_gain_dbi = 8.0;
  return p;
}

AntennaModel tri_sector_tbs() {
  DirectionalAntenna d;
  d.sectors = 3;
  d.tilt_deg = 0.0;
  d.pattern.boresight_gain_dbi = 17.7;
  return d;
}

AntennaModel upa_tbs() {
  UpaAntenna u;
  u.rows = 16;
  u.cols = 16;
  u.element_pattern = default_upa_element_pattern();
  return u;
}

}  // namespace

// ---- antennas ---------------------------------------------------------------

AntennaModel default_plane_antenna(int scenario) {
  if (scenario >= 3) {
    UpaAntenna u;
    u.rows = 5;
    u.cols = 5;
    u.orientation.forward = Vec3(0.0, 0.0, -1.0);  // belly mounted, facing down
    u.orientation.up = Vec3(-1.0, 0.0, 0.0);       // rows along the flight direction
    u.tilt_deg = 0.0;
    u.element_pattern = default_upa_element_pattern();
    return u;
  }
  DirectionalAntenna d;
  d.orientation = Orientation::horizontal(180.0);  // along -x
  d.tilt_deg = 0.0;
  d.pattern = plane_directional_pattern();
  return d;
}

AntennaModel default_abs_antenna(int scenario, const DescentTrajectory& traj) {
  if (scenario == 2 || scenario == 4) {
    UpaAntenna u;
    u.rows = 32;
    u.cols = 32;
    u.orientation = Orientation::horizontal(0.0);  // facing the approach path (+x)
    u.tilt_deg = 0.0;
    u.element_pattern = default_upa_element_pattern();
    return u;
  }
  DirectionalAntenna d;
  d.orientation = Orientation::horizontal(0.0);
  d.tilt_deg = traj.pitch_deg;
  d.pattern.boresight_gain_dbi = 17.7;
  return d;
}

AntennaModel default_tbs_antenna(const std::string& band_name) {
  return band_name == "mmwave" ? upa_tbs() : tri_sector_tbs();
}

AntennaModel parse_antenna(const json& j, const std::string& path, std::vector<std::string>& errors) {
  Reader r(j, path, errors);
  std::string type;
  r.string("type", type);
  AntennaModel out = OmniAntenna{};
  if (type == "omni") {
    OmniAntenna o;
    r.number("gain_dbi", o.gain_dbi);
    out = o;
  } else if (type == "directional") {
    DirectionalAntenna d;
    d.pattern = parse_pattern(r, d.pattern);
    Vec3 f = d.orientation.forward, u = d.orientation.up;
    r.vec3("boresight", f);
    r.vec3("up", u);
    d.orientation.forward = f;
    d.orientation.up = u;
    r.number("tilt_deg", d.tilt_deg);
    r.integer("sectors", d.sectors);
    if (d.sectors < 1) errors.push_back(path + "/sectors: must be at least 1");
    out = d;
  } else if (type == "upa") {
    UpaAntenna u;
    r.integer("rows", u.rows);
    r.integer("cols", u.cols);
    if (u.rows < 1 || u.cols < 1) errors.push_back(path + ": rows and cols must be at least 1");
    r.number("spacing_m", u.spacing_m);
    Vec3 f = u.orientation.forward, up = u.orientation.up;
    r.vec3("boresight", f);
    r.vec3("up", up);
    u.orientation.forward = f;
    u.orientation.up = up;
    r.number("tilt_deg", u.tilt_deg);
    u.element_pattern = default_upa_element_pattern();
    if (r.has("element")) {
      const json& e = r.raw("element");
      Reader er(e, path + "/element", errors);
      std::string et = "directional";
      er.string("type", et);
      if (et == "omni") {
        u.element_pattern.reset();
        er.number("gain_dbi", u.omni_element_gain_dbi);
      } else if (et == "directional") {
        u.element_pattern = parse_pattern(er, *u.element_pattern);
      } else {
        errors.push_back(path + "/element/type: expected omni or directional");
      }
      er.finish();
    }
    out = u;
  } else {
    errors.push_back(path + "/type: expected omni, directional or upa");
  }
  r.finish();
  return out;
}

json antenna_to_json(const AntennaModel& a) {
  if (const auto* o = std::get_if<OmniAntenna>(&a)) return json{{"type", "omni"}, {"gain_dbi", o->gain_dbi}};
  if (const auto* d = std::get_if<DirectionalAntenna>(&a)) {
    json j = pattern_json(d->pattern);
    j["type"] = "directional";
    j["boresight"] = vec_json(d->orientation.forward);
    j["up"] = vec_json(d->orientation.up);
    j["tilt_deg"] = d->tilt_deg;
    j["sectors"] = d->sectors;
    return j;
  }
  const auto& u = std::get<UpaAntenna>(a);
  json j{{"type", "upa"},
         {"rows", u.rows},
         {"cols", u.cols},
         {"spacing_m", u.spacing_m},
         {"boresight", vec_json(u.orientation.forward)},
         {"up", vec_json(u.orientation.up)},
         {"tilt_deg", u.tilt_deg}};
  if (u.element_pattern) {
    json e = pattern_json(*u.element_pattern);
    e["type"] = "directional";
    j["element"] = e;
  } else {
    j["element"] = json{{"type", "omni"}, {"gain_dbi", u.omni_element_gain_dbi}};
  }
  return j;
}

// ---- scalar fields --------------------------------------------------------------

double parse_delta(const json& v, const std::string& path, std::vector<std::string>& errors) {
  if (v.is_number()) return dbm2watt(v.get<double>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
    static const std::regex re(R"(^\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(dBm)?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, re)) return dbm2watt(std::stod(m[1].str()));
  }
  errors.push_back(path + ": expected dBm as a number, \"<x> dBm\" or \"inf\"");
  return 0.0;
}

RunConfig parse_config(const json& document) {
  std::vector<std::string> errors;
  RunConfig cfg;
  if (!document.is_object()) throw ConfigError({"/: expected a JSON object"});
  Reader r(document, "", errors);

  // Band and scenario first; they select the remaining defaults.
  r.string("band", cfg.band_name);
  if (cfg.band_name == "microwave") {
    cfg.band = RadioBand{2e9, 20e6, 0.01};
  } else if (cfg.band_name == "mmwave") {
    cfg.band = RadioBand{28e9, 1e9, 0.1};
  } else if (cfg.band_name == "custom") {
    if (!r.has("carrier_hz") || !r.has("bandwidth_hz"))
      errors.push_back("/band: custom band needs carrier_hz and bandwidth_hz");
  } else {
    errors.push_back("/band: expected microwave, mmwave or custom");
  }
  r.number("carrier_hz", cfg.band.carrier_hz);
  r.number("bandwidth_hz", cfg.band.bandwidth_hz);
  r.number("attenuation_db_per_km", cfg.band.attenuation_db_per_km);
  r.integer("scenario", cfg.scenario);
  if (cfg.scenario < 1 || cfg.scenario > 4) errors.push_back("/scenario: must be 1, 2, 3 or 4");

  r.number("subchannel_bw_hz", cfg.subchannel_bw);
  if (!(cfg.band.carrier_hz > 0.0)) errors.push_back("/carrier_hz: must be positive");
  if (!(cfg.band.bandwidth_hz > 0.0)) errors.push_back("/bandwidth_hz: must be positive");
  if (!(cfg.band.attenuation_db_per_km >= 0.0)) errors.push_back("/attenuation_db_per_km: must be non-negative");
  if (!(cfg.subchannel_bw > 0.0)) errors.push_back("/subchannel_bw_hz: must be positive");
  cfg.n_sub = cfg.subchannel_bw > 0.0 ? static_cast<int>(std::floor(cfg.band.bandwidth_hz / cfg.subchannel_bw + 1e-9)) : 1;
  r.integer("n_sub", cfg.n_sub);
  if (cfg.n_sub < 1) errors.push_back("/n_sub: must be at least 1");
  else if (cfg.n_sub * cfg.subchannel_bw > cfg.band.bandwidth_hz * (1.0 + 1e-9))
    errors.push_back("/n_sub: n_sub * subchannel_bw_hz exceeds bandwidth_hz");

  r.number("transmission_window_s", cfg.grid.window);
  r.number("slot_duration_s", cfg.grid.slot_duration);
  r.integer("decimation", cfg.grid.decimation);
  r.number("refine_window_s", cfg.grid.refine_window);
  r.integer("refine_factor", cfg.grid.refine_factor);
  try {
    cfg.grid.validate();
  } catch (const ConfigError& e) {
    for (const auto& i : e.items()) errors.push_back("/" + i);
  }

  if (r.has("delta")) cfg.delta_w = parse_delta(r.raw("delta"), "/delta", errors);
  r.number("p_max_w", cfg.p_max_w);
  r.number("p_ant_w", cfg.p_ant_w);
  if (!(cfg.p_max_w > 0.0)) errors.push_back("/p_max_w: must be positive");
  if (!(cfg.p_ant_w > 0.0)) errors.push_back("/p_ant_w: must be positive");
  double noise_dbm_hz = -174.0;
  r.number("noise_psd_dbm_hz", noise_dbm_hz);
  cfg.noise_psd_w = dbm2watt(noise_dbm_hz);

  if (r.has("mcs")) {
    const json& m = r.raw("mcs");
    if (m.is_string()) {
      cfg.mcs_mode = m.get<std::string>();
      if (cfg.mcs_mode == "lte-a") cfg.rate = RateModel::lte_a();
      else if (cfg.mcs_mode == "shannon") cfg.rate = RateModel::shannon();
      else errors.push_back("/mcs: expected lte-a, shannon or a table object");
    } else if (m.is_object()) {
      cfg.mcs_mode = "custom-table";
      Reader mr(m, "/mcs", errors);
      std::vector<double> th, ef;
      if (mr.has("thresholds_db") && mr.raw("thresholds_db").is_array()) {
        for (const auto& v : m.at("thresholds_db")) th.push_back(v.is_number() ? v.get<double>() : NAN);
      } else {
        errors.push_back("/mcs/thresholds_db: expected an array of numbers");
      }
      if (mr.has("efficiencies") && mr.raw("efficiencies").is_array()) {
        for (const auto& v : m.at("efficiencies")) ef.push_back(v.is_number() ? v.get<double>() : NAN);
      } else {
        errors.push_back("/mcs/efficiencies: expected an array of numbers");
      }
      try {
        cfg.rate = RateModel::from_table(McsTable(th, ef));
      } catch (const ConfigError& e) {
        for (const auto& i : e.items()) errors.push_back("/" + i);
      }
      if (mr.has("upper_surrogate")) {
        Reader sr(mr.raw("upper_surrogate"), "/mcs/upper_surrogate", errors);
        sr.number("a", cfg.rate.upper.a);
        sr.number("c", cfg.rate.upper.c);
        sr.number("d", cfg.rate.upper.d);
        sr.finish();
      }
      mr.finish();
      if (cfg.rate.table.size() > 0 && !validate_upper_bound(cfg.rate.upper, cfg.rate.table))
        errors.push_back("/mcs/upper_surrogate: does not dominate the table");
    } else {
      errors.push_back("/mcs: expected a string or an object");
    }
  }

  if (r.has("trajectory")) {
    Reader tr(r.raw("trajectory"), "/trajectory", errors);
    tr.number("pitch_deg", cfg.trajectory.pitch_deg);
    tr.number("vertical_velocity_mps", cfg.trajectory.vertical_velocity);
    tr.number("runway_length_m", cfg.trajectory.runway_length);
    tr.number("cruise_altitude_m", cfg.trajectory.cruise_altitude);
    tr.finish();
  }
  try {
    cfg.trajectory.validate();
  } catch (const ConfigError& e) {
    for (const auto& i : e.items()) errors.push_back("/" + i);
  }
  r.number("bs_height_m", cfg.bs_height);

  r.uint64("seed", cfg.seed);

  cfg.plane_antenna = default_plane_antenna(cfg.scenario);
  cfg.abs_antenna = default_abs_antenna(cfg.scenario, cfg.trajectory);
  cfg.tbs_antenna = default_tbs_antenna(cfg.band_name);

  if (r.has("layout")) {
    Reader lr(r.raw("layout"), "/layout", errors);
    lr.integer("tbs_count", cfg.tbs_count);
    if (cfg.tbs_count < 0) errors.push_back("/layout/tbs_count: must be non-negative");
    lr.string("file", cfg.layout_file);
    if (lr.has("region")) {
      Reader rr(lr.raw("region"), "/layout/region", errors);
      rr.number("x_min_m", cfg.region.x_min);
      rr.number("x_max_m", cfg.region.x_max);
      rr.number("y_min_m", cfg.region.y_min);
      rr.number("y_max_m", cfg.region.y_max);
      rr.finish();
      if (!(cfg.region.area() > 0.0) || !(cfg.region.x_max > cfg.region.x_min))
        errors.push_back("/layout/region: rectangle has zero area");
    }
    if (lr.has("tbs_antenna")) cfg.tbs_antenna = parse_antenna(lr.raw("tbs_antenna"), "/layout/tbs_antenna", errors);
    lr.finish();
  }

  if (r.has("antennas")) {
    Reader ar(r.raw("antennas"), "/antennas", errors);
    if (ar.has("plane")) cfg.plane_antenna = parse_antenna(ar.raw("plane"), "/antennas/plane", errors);
    if (ar.has("abs")) cfg.abs_antenna = parse_antenna(ar.raw("abs"), "/antennas/abs", errors);
    ar.finish();
  }
  const bool plane_single = !std::holds_alternative<UpaAntenna>(cfg.plane_antenna);
  const bool abs_single = !std::holds_alternative<UpaAntenna>(cfg.abs_antenna);
  const bool consistent = (cfg.scenario == 1 && plane_single && abs_single) ||
                          (cfg.scenario == 2 && plane_single && !abs_single) ||
                          (cfg.scenario == 3 && !plane_single && abs_single) ||
                          (cfg.scenario == 4 && !plane_single && !abs_single);
  if (!consistent) errors.push_back("/antennas: array types do not match the scenario");

  if (r.has("solver")) {
    Reader sr(r.raw("solver"), "/solver", errors);
    std::string alg = "barrier";
    sr.string("algorithm", alg);
    if (alg == "barrier") cfg.optimizer.sdp.algorithm = SdpAlgorithm::Barrier;
    else if (alg == "admm") cfg.optimizer.sdp.algorithm = SdpAlgorithm::Admm;
    else errors.push_back("/solver/algorithm: expected barrier or admm");
    sr.number("tol", cfg.optimizer.sdp.tol);
    sr.integer("max_iter", cfg.optimizer.sdp.max_iter);
    sr.boolean("constraint_generation", cfg.optimizer.sdp.constraint_generation);
    sr.integer("n_trials", cfg.optimizer.n_trials);
    sr.number("rank_tol", cfg.optimizer.rank_tol);
    sr.number("far_field_tol", cfg.far_field_tolerance);
    sr.boolean("exhaustive_m", cfg.optimizer.exhaustive_m);
    sr.boolean("full_band", cfg.optimizer.full_band);
    sr.boolean("printed_l3", cfg.optimizer.printed_l3);
    sr.finish();
    if (!(cfg.optimizer.sdp.tol > 0.0)) errors.push_back("/solver/tol: must be positive");
    if (cfg.optimizer.sdp.max_iter < 1) errors.push_back("/solver/max_iter: must be positive");
    if (cfg.optimizer.n_trials < 0) errors.push_back("/solver/n_trials: must be non-negative");
  }
  cfg.optimizer.seed = cfg.seed;
  r.boolean("capacity_only", cfg.capacity_only);

  if (r.has("output")) {
    Reader orr(r.raw("output"), "/output", errors);
    orr.string("dir", cfg.output.dir);
    orr.boolean("plots", cfg.output.plots);
    orr.boolean("snapshot_dump", cfg.output.snapshot_dump);
    orr.boolean("sdp_trace", cfg.output.sdp_trace);
    orr.finish();
  }
  r.finish();

  if (!errors.empty()) throw ConfigError(errors);

  // Echo of the resolved configuration.
  json e;
  e["band"] = cfg.band_name;
  e["carrier_hz"] = cfg.band.carrier_hz;
  e["bandwidth_hz"] = cfg.band.bandwidth_hz;
  e["attenuation_db_per_km"] = cfg.band.attenuation_db_per_km;
  e["subchannel_bw_hz"] = cfg.subchannel_bw;
  e["n_sub"] = cfg.n_sub;
  e["scenario"] = cfg.scenario;
  e["transmission_window_s"] = cfg.grid.window;
  e["slot_duration_s"] = cfg.grid.slot_duration;
  e["decimation"] = cfg.grid.decimation;
  e["refine_window_s"] = cfg.grid.refine_window;
  e["refine_factor"] = cfg.grid.refine_factor;
  e["delta"] = std::isinf(cfg.delta_w) ? json("inf") : json(watt2dbm(cfg.delta_w));
  e["p_max_w"] = cfg.p_max_w;
  e["p_ant_w"] = cfg.p_ant_w;
  e["noise_psd_dbm_hz"] = watt2dbm(cfg.noise_psd_w);
  e["mcs"] = cfg.mcs_mode;
  e["trajectory"] = {{"pitch_deg", cfg.trajectory.pitch_deg},
                     {"vertical_velocity_mps", cfg.trajectory.vertical_velocity},
                     {"runway_length_m", cfg.trajectory.runway_length},
                     {"cruise_altitude_m", cfg.trajectory.cruise_altitude}};
  e["bs_height_m"] = cfg.bs_height;
  e["seed"] = cfg.seed;
  e["layout"] = {{"tbs_count", cfg.tbs_count},
                 {"file", cfg.layout_file},
                 {"region",
                  {{"x_min_m", cfg.region.x_min},
                   {"x_max_m", cfg.region.x_max},
                   {"y_min_m", cfg.region.y_min},
                   {"y_max_m", cfg.region.y_max}}},
                 {"tbs_antenna", antenna_to_json(cfg.tbs_antenna)}};
  e["antennas"] = {{"plane", antenna_to_json(cfg.plane_antenna)}, {"abs", antenna_to_json(cfg.abs_antenna)}};
  e["solver"] = {{"algorithm", cfg.optimizer.sdp.algorithm == SdpAlgorithm::Barrier ? "barrier" : "admm"},
                 {"tol", cfg.optimizer.sdp.tol},
                 {"max_iter", cfg.optimizer.sdp.max_iter},
                 {"constraint_generation", cfg.optimizer.sdp.constraint_generation},
                 {"n_trials", cfg.optimizer.n_trials},
                 {"rank_tol", cfg.optimizer.rank_tol},
                 {"far_field_tol", cfg.far_field_tolerance},
                 {"exhaustive_m", cfg.optimizer.exhaustive_m},
                 {"full_band", cfg.optimizer.full_band},
                 {"printed_l3", cfg.optimizer.printed_l3}};
  e["capacity_only"] = cfg.capacity_only;
  cfg.echo = e;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  return parse_config(doc);
}

NetworkLayout load_layout(const std::string& path, const RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open layout file"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  std::vector<std::string> errors;
  NetworkLayout layout;
  layout.bs_height = cfg.bs_height;
  layout.abs.position = default_abs_position(cfg.trajectory, cfg.bs_height);
  layout.abs.antenna = cfg.abs_antenna;
  Reader r(doc, "", errors);
  if (r.has("abs")) {
    Reader ar(r.raw("abs"), "/abs", errors);
    ar.vec3("position", layout.abs.position);
    if (ar.has("antenna")) layout.abs.antenna = parse_antenna(ar.raw("antenna"), "/abs/antenna", errors);
    ar.finish();
  }
  if (r.has("tbs")) {
    const json& list = r.raw("tbs");
    if (!list.is_array()) {
      errors.push_back("/tbs: expected an array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = "/tbs/" + std::to_string(i);
        Reader tr(list[i], p, errors);
        BaseStation bs;
        bs.antenna = cfg.tbs_antenna;
        if (!tr.has("position")) errors.push_back(p + "/position: required");
        tr.vec3("position", bs.position);
        if (tr.has("antenna")) bs.antenna = parse_antenna(tr.raw("antenna"), p + "/antenna", errors);
        tr.finish();
        layout.tbs.push_back(bs);
      }
    }
  }
  r.finish();
  if (!errors.empty()) throw ConfigError(errors);
  return layout;
}

}  // namespace a2g
