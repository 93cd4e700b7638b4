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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "a2g/config.hpp"
#include "a2g/output.hpp"
#include "a2g/planner.hpp"

namespace {

using nlohmann::json;

struct PlanFlags {
  std::string config;
  std::optional<int> scenario;
  std::optional<double> ts;
  std::optional<double> pmax;
  std::optional<std::string> delta;
  std::optional<std::string> band;
  std::optional<std::uint64_t> seed;
  std::optional<int> decimation;
  std::optional<std::string> mcs;
  std::optional<std::string> out;
  bool exhaustive_m = false;
  bool full_band = false;
  bool plots = false;
  bool capacity_only = false;
  bool dump_snapshots = false;
  bool sdp_trace = false;
  bool quiet = false;
};

json read_document(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw a2g::ConfigError({path + ": cannot open config file"});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw a2g::ConfigError({path + ": " + e.what()});
  }
}

// Flags are written into the document so they pass the same validation.
void apply_flags(json& doc, const PlanFlags& f) {
  if (!doc.is_object()) return;
  if (f.band) doc["band"] = *f.band;
  if (f.scenario) doc["scenario"] = *f.scenario;
  if (f.ts) doc["transmission_window_s"] = *f.ts;
  if (f.pmax) doc["p_max_w"] = *f.pmax;
  if (f.delta) doc["delta"] = *f.delta;
  if (f.seed) doc["seed"] = *f.seed;
  if (f.decimation) doc["decimation"] = *f.decimation;
  if (f.mcs) doc["mcs"] = *f.mcs;
  if (f.exhaustive_m) doc["solver"]["exhaustive_m"] = true;
  if (f.full_band) doc["solver"]["full_band"] = true;
  if (f.capacity_only) doc["capacity_only"] = true;
  if (f.out) doc["output"]["dir"] = *f.out;
  if (f.plots) doc["output"]["plots"] = true;
  if (f.dump_snapshots) doc["output"]["snapshot_dump"] = true;
  if (f.sdp_trace) doc["output"]["sdp_trace"] = true;
}

int run(const PlanFlags& f) {
  a2g::RunConfig cfg;
  try {
    json doc = read_document(f.config);
    apply_flags(doc, f);
    cfg = a2g::parse_config(doc);
  } catch (const a2g::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const bool files = !cfg.output.dir.empty();
  if (!files && (cfg.output.plots || cfg.output.snapshot_dump || cfg.output.sdp_trace)) {
    std::cerr << "--plots, --dump-snapshots and --sdp-trace need --out\n";
    return 2;
  }
  std::ofstream snapshots, trace;
  try {
    if (files) {
      a2g::ensure_output_dir(cfg.output.dir);
      const std::filesystem::path dir(cfg.output.dir);
      if (cfg.output.snapshot_dump) snapshots.open(dir / "snapshots.jsonl");
      if (cfg.output.sdp_trace) {
        trace.open(dir / "sdp_trace.csv");
        trace << "slot,iteration,primal_residual,dual_residual,gap,objective\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  int current_slot = 0;
  if (cfg.output.sdp_trace) {
    cfg.optimizer.sdp.on_iterate = [&](const a2g::SdpIterate& it) {
      trace << current_slot << ',' << it.iteration << ',' << it.primal_residual << ',' << it.dual_residual << ','
            << it.gap << ',' << it.objective << '\n';
    };
  }

  a2g::PlanHooks hooks;
  hooks.on_snapshot = [&](const a2g::ChannelSnapshot& s) {
    current_slot = s.slot;
    if (snapshots.is_open()) snapshots << a2g::snapshot_json(s).dump() << '\n';
  };
  if (!f.quiet) {
    hooks.on_slot = [](const a2g::SlotRecord& r, std::size_t done, std::size_t total) {
      if (done % 25 == 0 || done == total)
        std::fprintf(stderr, "slot %zu/%zu  tau=%.1f s  M*=%d  rate=%.3g bit/s\n", done, total, r.tau, r.m_star,
                     r.rate_bps);
    };
  }

  a2g::RunSummary summary;
  try {
    summary = a2g::run_plan(cfg, hooks);
  } catch (const a2g::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }

  try {
    if (files) a2g::emit_outputs(summary, cfg);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  std::printf("V_data  = %.4f GB\n", a2g::bits_to_gb(summary.v_data_bits));
  std::printf("V_upper = %.4f GB\n", a2g::bits_to_gb(summary.v_upper_bits));
  std::printf("V_cap   = %.4f GB\n", a2g::bits_to_gb(summary.v_cap_bits));
  std::printf("slots=%zu degraded=%d near_field=%d sdp_solves=%ld wall=%.1f s seed=%llu\n",
              summary.records.size(), summary.degraded_slots, summary.near_field_slots, summary.sdp_solves,
              summary.wall_seconds, static_cast<unsigned long long>(summary.seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Descent-phase air-to-ground data offload planner"};
  app.require_subcommand(1);

  PlanFlags f;
  CLI::App* plan = app.add_subcommand("plan", "Plan one descent and report offloaded volume");
  plan->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  plan->add_option("--scenario", f.scenario, "1..4")->check(CLI::Range(1, 4));
  plan->add_option("--ts", f.ts, "transmission window in seconds");
  plan->add_option("--pmax", f.pmax, "total transmit power in W");
  plan->add_option("--delta", f.delta, "per-subchannel interference cap in dBm, or inf");
  plan->add_option("--band", f.band, "microwave or mmwave")->check(CLI::IsMember({"microwave", "mmwave"}));
  plan->add_option("--seed", f.seed, "layout and randomization seed");
  plan->add_option("--decimation", f.decimation, "physical slots per evaluated slot");
  plan->add_flag("--exhaustive-m", f.exhaustive_m, "evaluate every subchannel count");
  plan->add_flag("--full-band", f.full_band, "force M = N_sub");
  plan->add_option("--mcs", f.mcs, "lte-a or shannon")->check(CLI::IsMember({"lte-a", "shannon"}));
  plan->add_option("--out", f.out, "output directory");
  plan->add_flag("--plots", f.plots, "write volume.svg");
  plan->add_flag("--capacity-only", f.capacity_only, "upper bounds and V_cap only");
  plan->add_flag("--dump-snapshots", f.dump_snapshots, "write snapshots.jsonl");
  plan->add_flag("--sdp-trace", f.sdp_trace, "write solver residuals to sdp_trace.csv");
  plan->add_flag("-q,--quiet", f.quiet, "no progress on stderr");

  CLI11_PARSE(app, argc, argv);
  if (plan->parsed()) return run(f);
  return 1;
}
