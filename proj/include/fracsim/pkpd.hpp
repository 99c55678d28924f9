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

#include <array>
#include <string>
#include <vector>

#include "fracsim/matrix.hpp"

namespace fracsim::pkpd {

enum class Sex { male, female };

/// Demographic inputs of the Schnider parameterization.
struct PatientProfile {
  double age_years = 0.0;
  double weight_kg = 0.0;
  double height_cm = 0.0;
  Sex sex = Sex::male;
};

/// Rate constants (1/min), central volume (l) and lean body mass (kg) of the
/// four-compartment propofol model.
struct PkpdParams {
  double a10, a12, a13, a21, a31, ae0;
  double v1;
  double lbm;
};

/// Parameters of the sigmoid BIS effect model. The defaults are the typical
/// literature values; all three can be overridden per run.
struct BisParams {
  double bis0 = 100.0;
  double ec50 = 3.4;  // mg/l
  double gamma = 3.0;

  void validate() const;
};

struct EquilibriumPoint {
  Vec state;       // (mg, mg, mg, mg/l)
  double infusion; // mg/min
};

/// James-formula lean body mass. Throws std::invalid_argument when the
/// profile is degenerate or the formula result is non-positive (it is only
/// meant for normal to moderately obese builds).
double lean_body_mass(const PatientProfile& p);

/// Advisory range check: the parameterization is used well inside
/// age 20-80, weight 50-120 kg, height 150-200 cm. Out-of-range profiles
/// still evaluate; callers may surface these messages as warnings.
std::vector<std::string> profile_warnings(const PatientProfile& p);

/// Schnider population parameters from the demographic profile.
PkpdParams schnider_params(const PatientProfile& p);

/// System matrices of the compartment model:
/// rows are (blood, muscle, fat, effect site), input enters the blood
/// compartment with unit gain.
struct SystemMatrices {
  SquareMatrix a;  // 4x4 rate matrix (1/min)
  Vec b;           // input column
};

SystemMatrices assemble_system(const PkpdParams& params);

/// Equilibrium state and infusion holding the effect site at EC50.
EquilibriumPoint equilibrium(const PkpdParams& params, const BisParams& bis);

/// Sigmoid BIS value for an effect-site concentration y4 >= 0.
double bis(double y4, const BisParams& params);

/// Projection of 4-component states onto (blood, effect site).
std::vector<std::array<double, 2>> fast_state(const std::vector<Vec>& states);

}  // namespace fracsim::pkpd
