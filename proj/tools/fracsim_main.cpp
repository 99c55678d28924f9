// Copyright 2026-present the fracsim project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fracsim/errors.hpp"
#include "fracsim/kernels.hpp"
#include "fracsim/pkpd.hpp"
#include "fracsim/sweep.hpp"
#include "fracsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRunFailed = 2;

int run_simulate(const std::string& config_path, const std::string& out_override, bool no_plots,
                 bool oracle_check) {
  fracsim::ScenarioConfig cfg;
  try {
    cfg = fracsim::load_config(config_path);
  } catch (const fracsim::ConfigError& err) {
    if (err.line > 0) {
      std::fprintf(stderr, "%s:%d: %s\n", config_path.c_str(), err.line, err.what());
    } else {
      std::fprintf(stderr, "%s: %s\n", config_path.c_str(), err.what());
    }
    return kExitConfigError;
  }
  if (!out_override.empty()) cfg.out_dir = out_override;

  for (const std::string& w : fracsim::pkpd::profile_warnings(cfg.patient))
    std::fprintf(stderr, "warning: patient %s\n", w.c_str());

  fracsim::SweepOptions opts;
  opts.oracle_check = oracle_check;

  std::printf("fracsim %s (%s kernels): %zu run(s) -> %s\n", fracsim::kVersion,
              fracsim::kernels::active_backend(), cfg.psi_list.size() * cfg.alpha_list.size(),
              cfg.out_dir.c_str());

  const fracsim::RunManifest manifest = fracsim::run_sweep(cfg, opts);
  for (const fracsim::RunRecord& r : manifest.runs) {
    if (r.failed) {
      std::printf("  %-28s FAILED: %s\n", r.label.c_str(), r.error.c_str());
    } else {
      std::printf("  %-28s BIS(end) = %7.3f%s%s\n", r.label.c_str(), r.bis_end,
                  r.band_deviation ? "  [outside 40-60 band]" : "",
                  r.oracle_max_rel_diff
                      ? ("  oracle diff " + std::to_string(*r.oracle_max_rel_diff)).c_str()
                      : "");
    }
  }

  if (!no_plots) {
    const auto files = fracsim::emit_plots(manifest, cfg);
    std::printf("wrote %zu plot file(s)\n", files.size());
  }
  std::printf("manifest: %s/manifest.json\n", cfg.out_dir.c_str());

  return manifest.any_failed() ? kExitRunFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order PK/PD induction simulator"};
  app.set_version_flag("--version", std::string("fracsim ") + fracsim::kVersion);

  std::string config_path;
  std::string out_override;
  bool no_plots = false;
  bool oracle_check = false;

  CLI::App* sim = app.add_subcommand("simulate", "Run the (psi, alpha) sweep from a scenario file");
  sim->add_option("config", config_path, "Scenario configuration file")->required();
  sim->add_option("--out", out_override, "Output directory (overrides [output] dir)");
  sim->add_flag("--no-plots", no_plots, "Skip SVG/gnuplot emission");
  sim->add_flag("--oracle-check", oracle_check,
                "Cross-check every run against the predictor-corrector oracle");
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    return run_simulate(config_path, out_override, no_plots, oracle_check);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitRunFailed;
  }
}
