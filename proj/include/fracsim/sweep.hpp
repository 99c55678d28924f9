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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracsim/config.hpp"

namespace fracsim {

struct SweepOptions {
  bool oracle_check = false;
  int oracle_steps = 4000;
};

struct RunRecord {
  std::string psi_name;
  double alpha = 1.0;
  std::string label;     // filename-safe run identifier
  std::string csv_file;  // relative to the output directory
  std::string checksum;  // FNV-1a 64 of the CSV bytes, hex
  double bis_end = 0.0;
  // BIS at the end of the horizon outside the 40-60 anesthesia band.
  bool band_deviation = false;
  bool failed = false;
  std::string error;
  std::optional<double> oracle_max_rel_diff;
};

/// One figure grouping: either all alpha values at a fixed psi, or all psi
/// functions at a fixed alpha.
struct FigureGroup {
  std::string name;
  std::vector<std::size_t> run_indices;
  std::string combined_csv;
};

struct RunManifest {
  std::string version;
  std::vector<RunRecord> runs;
  std::vector<FigureGroup> groups;

  bool any_failed() const;
  /// Deterministic JSON rendering (sorted keys, no timestamps). The resolved
  /// scenario parameters are echoed; the output directory is not, so byte
  /// identity holds across relocated runs of the same scenario.
  std::string to_json(const ScenarioConfig& cfg) const;
};

/// Runs the full (psi, alpha) sweep: assembles the patient system, solves
/// each run with the piecewise closed form, writes one CSV per run plus one
/// combined BIS comparison CSV per figure grouping, and writes manifest.json.
/// Solver failures are recorded per run without aborting the sweep.
RunManifest run_sweep(const ScenarioConfig& cfg, const SweepOptions& opts = {});

/// Renders the figure groupings from the CSVs written by run_sweep: per
/// grouping one state-trajectory SVG (four panels), one BIS SVG with guide
/// lines at 40 and 60, and one gnuplot script. Requires the run CSVs to
/// exist; byte-identical output for identical CSVs.
std::vector<std::string> emit_plots(const RunManifest& manifest, const ScenarioConfig& cfg);

}  // namespace fracsim
