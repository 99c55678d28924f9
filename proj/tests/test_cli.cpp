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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fracsim/config.hpp"
#include "fracsim/errors.hpp"
#include "fracsim/sweep.hpp"

namespace fs = std::filesystem;
using fracsim::ConfigError;
using fracsim::load_config;
using fracsim::RunManifest;
using fracsim::run_sweep;
using fracsim::ScenarioConfig;

namespace {

const char* kBaseConfig = R"(# test scenario
[patient]
age = 53
weight = 77
height = 177
sex = male

[schedule]
breakpoints = 0 0.5467 1.8397
rates = 106.0907 0

[sweep]
psi = identity sqrt
alpha = 1 0.9

[output]
dir = {OUT}
grid_points = 32
)";

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "fracsim_test_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string substitute(std::string text, const std::string& out_dir) {
  const std::string key = "{OUT}";
  const auto pos = text.find(key);
  if (pos != std::string::npos) text.replace(pos, key.size(), out_dir);
  return text;
}

fs::path write_config(const fs::path& dir, const std::string& text, const char* name = "s.conf") {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("load_config: defaults and round trip") {
  const fs::path dir = scratch_dir();
  const auto cfg_path = write_config(dir, substitute(kBaseConfig, (dir / "out").string()));
  const ScenarioConfig cfg = load_config(cfg_path.string());

  CHECK(cfg.patient.age_years == 53.0);
  CHECK(cfg.bis.bis0 == 100.0);  // [bis] omitted, defaults applied
  CHECK(cfg.bis.ec50 == 3.4);
  CHECK(cfg.horizon == 1.8397);  // defaults to the last breakpoint
  CHECK(cfg.grid_points == 32);
  CHECK(cfg.psi_list.size() == 2);
  CHECK(cfg.alpha_list.size() == 2);
  CHECK(cfg.make_grid().front() == 0.0);
  CHECK(cfg.make_grid().back() == doctest::Approx(1.8397));
}

TEST_CASE("load_config: parse and validation errors carry context") {
  const fs::path dir = scratch_dir();

  auto expect_error = [&](const std::string& text, const char* what) {
    const auto p = write_config(dir, text, "bad.conf");
    CHECK_THROWS_AS(load_config(p.string()), ConfigError);
    try {
      load_config(p.string());
    } catch (const ConfigError& err) {
      INFO("expected mention of ", what, ", got: ", err.what());
      CHECK(std::string(err.what()).find(what) != std::string::npos);
    }
  };

  std::string base = substitute(kBaseConfig, (dir / "out").string());

  // Malformed line.
  expect_error("[patient]\nage\n", "key = value");
  // Unknown psi spec / non-increasing psi.
  std::string bad_psi = base;
  bad_psi.replace(bad_psi.find("psi = identity sqrt"), 19, "psi = power:-1     ");
  expect_error(bad_psi, "psi");
  // Empty alpha list.
  std::string no_alpha = base;
  no_alpha.replace(no_alpha.find("alpha = 1 0.9"), 13, "alpha =      ");
  expect_error(no_alpha, "alpha");
  // Fractional order out of range.
  std::string bad_alpha = base;
  bad_alpha.replace(bad_alpha.find("alpha = 1 0.9"), 13, "alpha = 1 1.2");
  expect_error(bad_alpha, "alpha");
  // Horizon not covered by the schedule.
  expect_error(base + "\n[schedule2]\n", "section");
  std::string far_horizon = base;
  far_horizon += "\n[schedule]\n";  // duplicate section is fine, but key collides
  expect_error(far_horizon + "breakpoints = 1\n", "duplicate");
  // Unknown key.
  expect_error(base + "typo = 3\n", "unknown key");

  try {
    const auto p = write_config(dir, "[patient]\nage\n", "lines.conf");
    load_config(p.string());
  } catch (const ConfigError& err) {
    CHECK(err.line == 2);
  }
}

TEST_CASE("run_sweep: coverage, CSV sanity, determinism") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "out";
  const auto cfg_path = write_config(dir, substitute(kBaseConfig, out.string()));
  const ScenarioConfig cfg = load_config(cfg_path.string());

  const RunManifest manifest = run_sweep(cfg);
  CHECK_FALSE(manifest.any_failed());
  CHECK(manifest.runs.size() == 4);  // |psi| x |alpha|

  for (const auto& rec : manifest.runs) {
    const std::string csv = slurp(out / rec.csv_file);
    CHECK(csv.rfind("t,y1,y2,y3,y4,BIS\n", 0) == 0);

    // First data row is the initial condition; BIS within [0,100]; t strictly
    // increasing.
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    double prev_t = -1.0;
    bool first = true;
    while (std::getline(is, line)) {
      double t, y1, y2, y3, y4, b;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &t, &y1, &y2, &y3, &y4, &b) ==
              6);
      if (first) {
        CHECK(t == 0.0);
        CHECK(y1 == 0.0);
        CHECK(y4 == 0.0);
        CHECK(b == 100.0);
        first = false;
      }
      CHECK(t > prev_t);
      prev_t = t;
      CHECK(b >= 0.0);
      CHECK(b <= 100.0);
    }
  }

  // sqrt at alpha=1 ends below the band; identity at alpha=1 inside it.
  for (const auto& rec : manifest.runs) {
    if (rec.psi_name == "sqrt" && rec.alpha == 1.0) CHECK(rec.band_deviation);
    if (rec.psi_name == "identity" && rec.alpha == 1.0) CHECK_FALSE(rec.band_deviation);
  }

  // Byte-identical rerun, including the manifest.
  const std::string manifest_bytes = slurp(out / "manifest.json");
  std::vector<std::string> first_csvs;
  for (const auto& rec : manifest.runs) first_csvs.push_back(slurp(out / rec.csv_file));

  const RunManifest again = run_sweep(cfg);
  CHECK(slurp(out / "manifest.json") == manifest_bytes);
  for (std::size_t i = 0; i < again.runs.size(); ++i) {
    CHECK(slurp(out / again.runs[i].csv_file) == first_csvs[i]);
    CHECK(again.runs[i].checksum == manifest.runs[i].checksum);
  }
}

TEST_CASE("run_sweep: zero-rate schedule keeps BIS at 100") {
  const fs::path dir = scratch_dir();
  std::string text = substitute(kBaseConfig, (dir / "out").string());
  text.replace(text.find("rates = 106.0907 0"), 18, "rates = 0        0");
  const ScenarioConfig cfg = load_config(write_config(dir, text).string());

  const RunManifest manifest = run_sweep(cfg);
  for (const auto& rec : manifest.runs) {
    CHECK(rec.bis_end == 100.0);
    const std::string csv = slurp(fs::path(cfg.out_dir) / rec.csv_file);
    CHECK(csv.find(",100\n") != std::string::npos);
  }
}

TEST_CASE("emit_plots: deterministic files, missing CSV reported") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "out";
  const auto cfg_path = write_config(dir, substitute(kBaseConfig, out.string()));
  const ScenarioConfig cfg = load_config(cfg_path.string());
  const RunManifest manifest = run_sweep(cfg);

  const auto files = emit_plots(manifest, cfg);
  // 2 psi groups + 2 alpha groups, three files each.
  CHECK(files.size() == 12);
  std::vector<std::string> bytes;
  for (const auto& f : files) bytes.push_back(slurp(out / f));

  const auto files2 = emit_plots(manifest, cfg);
  REQUIRE(files2 == files);
  for (std::size_t i = 0; i < files.size(); ++i) CHECK(slurp(out / files2[i]) == bytes[i]);

  // SVG figures reference the BIS guides at 40 and 60.
  const std::string bis_fig = slurp(out / "fig_psi_identity_bis.svg");
  CHECK(bis_fig.find("stroke-dasharray") != std::string::npos);

  fs::remove(out / manifest.runs[0].csv_file);
  CHECK_THROWS_WITH_AS(emit_plots(manifest, cfg),
                       doctest::Contains(manifest.runs[0].label.c_str()), std::runtime_error);
}

TEST_CASE("run_sweep: a failing run is recorded without aborting the sweep") {
  const fs::path dir = scratch_dir();
  std::string text = substitute(kBaseConfig, (dir / "out").string());
  // power:200 overflows the propagator series at this horizon; the run must
  // fail cleanly while its siblings complete.
  text.replace(text.find("psi = identity sqrt"), 19, "psi = identity power:200");
  const ScenarioConfig cfg = load_config(write_config(dir, text).string());

  const RunManifest manifest = run_sweep(cfg);
  CHECK(manifest.any_failed());
  int failed = 0, succeeded = 0;
  for (const auto& rec : manifest.runs) {
    if (rec.failed) {
      ++failed;
      CHECK_FALSE(rec.error.empty());
      CHECK(rec.psi_name == "power:200");
    } else {
      ++succeeded;
      CHECK(fs::exists(fs::path(cfg.out_dir) / rec.csv_file));
    }
  }
  CHECK(failed == 2);
  CHECK(succeeded == 2);

  // Plot emission skips the failed runs and still renders the healthy groups.
  CHECK_NOTHROW(emit_plots(manifest, cfg));
}

TEST_CASE("emit_plots: empty manifest emits nothing") {
  const fs::path dir = scratch_dir();
  const auto cfg_path = write_config(dir, substitute(kBaseConfig, (dir / "out").string()));
  const ScenarioConfig cfg = load_config(cfg_path.string());
  RunManifest empty;
  empty.version = "test";
  CHECK(emit_plots(empty, cfg).empty());
}
