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

#include <string>
#include <vector>

#include "fracsim/pkpd.hpp"
#include "fracsim/psi.hpp"
#include "fracsim/solver.hpp"

namespace fracsim {

/// Scenario description for a sweep over psi functions and fractional
/// orders. Loaded from a plain-text key-value file with sections
/// [patient], [bis], [schedule], [sweep] and [output]; see the shipped
/// configs/induction.conf for the full format.
struct ScenarioConfig {
  pkpd::PatientProfile patient;
  pkpd::BisParams bis;
  std::vector<PsiFunction> psi_list;
  std::vector<double> alpha_list;
  InfusionSchedule schedule;
  double horizon = 0.0;  // min; defaults to the last breakpoint
  int grid_points = 400;
  std::string out_dir = "out";
  bool emit_csv = true;
  bool emit_svg = true;
  bool emit_gnuplot = true;

  void validate() const;

  /// Uniform output grid on [schedule start, horizon].
  std::vector<double> make_grid() const;
};

/// Parses and validates a scenario file. Throws ConfigError with a 1-based
/// line number for parse errors, or with the offending field named for
/// validation errors.
ScenarioConfig load_config(const std::string& path);

}  // namespace fracsim
