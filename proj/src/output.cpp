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

#include "a2g/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace a2g {

using nlohmann::json;

namespace {

// Round-trip precision, locale independent.
std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string db_or_inf(double linear, double offset_db) {
  return linear > 0.0 ? num(10.0 * std::log10(linear) + offset_db) : "-inf";
}

json cvec_json(const CVec& v) {
  json mag = json::array(), ph = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    mag.push_back(a > 0.0 ? 20.0 * std::log10(a) : -400.0);
    ph.push_back(std::arg(v(i)));
  }
  return json{{"magnitude_db", mag}, {"phase_rad", ph}};
}

}  // namespace

void write_slot_csv(std::ostream& os, const RunSummary& s) {
  os << kSlotCsvHeader << "\n";
  for (const SlotRecord& r : s.records) {
    os << num(r.tau) << ',' << r.m_star << ',' << num(r.rate_bps) << ',' << num(r.upper_bound_bps) << ','
       << db_or_inf(r.snr_linear, 0.0) << ',' << num(r.tx_power_w) << ','
       << db_or_inf(r.max_interference_w, 30.0) << ',' << (r.rank1 ? 1 : 0) << ',' << to_string(r.method)
       << "\n";
  }
}

json summary_json(const RunSummary& s, const RunConfig& cfg) {
  auto volume = [](double bits) {
    if (std::isinf(bits)) return json{{"bytes", "inf"}, {"gb", "inf"}};
    return json{{"bytes", bits / 8.0}, {"gb", bits_to_gb(bits)}};
  };
  json j;
  j["v_data"] = volume(s.v_data_bits);
  j["v_upper"] = volume(s.v_upper_bits);
  j["v_cap"] = volume(s.v_cap_bits);
  j["seed"] = s.seed;
  j["slots_evaluated"] = s.records.size();
  j["degraded_slots"] = s.degraded_slots;
  j["near_field_slots"] = s.near_field_slots;
  j["sdp_solves"] = s.sdp_solves;
  j["config"] = cfg.echo;
  return j;
}

json snapshot_json(const ChannelSnapshot& snap) {
  json j;
  j["slot"] = snap.slot;
  j["tau_s"] = snap.tau;
  j["n_a"] = snap.n_a();
  j["n_p"] = snap.n_p();
  j["link_gain_db"] = snap.link_gain > 0.0 ? 10.0 * std::log10(snap.link_gain) : -400.0;
  j["singular_ratio"] = snap.singular_ratio;
  j["near_field"] = snap.near_field;
  j["u_a"] = cvec_json(snap.u_a);
  j["u_p"] = cvec_json(snap.u_p);
  json cpl = json::array();
  for (double c : snap.coupling) cpl.push_back(c > 0.0 ? 10.0 * std::log10(c) : -400.0);
  j["tbs_coupling_db"] = cpl;
  return j;
}

void write_volume_svg(std::ostream& os, const RunSummary& s, const RunConfig& cfg) {
  const auto curve = cumulative_volume(s);
  const double w = 640, h = 400, ml = 70, mr = 20, mt = 20, mb = 50;
  const double t_max = std::max(cfg.grid.window, 1e-9);
  double v_max = 0.0;
  for (const auto& [t, v] : curve) v_max = std::max(v_max, bits_to_gb(v));
  if (std::isfinite(s.v_cap_bits)) v_max = std::max(v_max, bits_to_gb(s.v_cap_bits));
  if (!(v_max > 0.0)) v_max = 1.0;
  auto px = [&](double t) { return ml + (w - ml - mr) * t / t_max; };
  auto py = [&](double gb) { return h - mb - (h - mt - mb) * gb / v_max; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
     << "\" stroke=\"black\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& [t, v] : curve) os << px(t) << ',' << py(bits_to_gb(v)) << ' ';
  os << "\"/>\n";
  if (std::isfinite(s.v_cap_bits)) {
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t_max) << "\" y2=\""
       << py(bits_to_gb(s.v_cap_bits)) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  }
  os << "<text x=\"" << (w / 2) << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">T_s (s)</text>\n";
  os << "<text x=\"16\" y=\"" << h / 2 << "\" transform=\"rotate(-90 16 " << h / 2
     << ")\" text-anchor=\"middle\">volume (GB)</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double gb = v_max * k / 4.0, t = t_max * k / 4.0;
    os << "<text x=\"" << ml - 6 << "\" y=\"" << py(gb) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
       << num(std::round(gb * 100) / 100) << "</text>\n";
    os << "<text x=\"" << px(t) << "\" y=\"" << h - mb + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << num(std::round(t)) << "</text>\n";
  }
  os << "</svg>\n";
}

void ensure_output_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw std::runtime_error(dir + ": cannot create output directory");
  const fs::path probe = fs::path(dir) / ".a2g_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw std::runtime_error(dir + ": output directory is not writable");
  }
  fs::remove(probe, ec);
}

void emit_outputs(const RunSummary& s, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output.dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error((dir / name).string() + ": cannot write");
    return f;
  };
  {
    auto f = open("slots.csv");
    write_slot_csv(f, s);
  }
  {
    auto f = open("summary.json");
    f << summary_json(s, cfg).dump(2) << "\n";
  }
  if (cfg.output.plots) {
    auto f = open("volume.svg");
    write_volume_svg(f, s, cfg);
  }
}

}  // namespace a2g
