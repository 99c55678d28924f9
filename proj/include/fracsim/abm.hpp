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

#include <span>

#include "fracsim/solver.hpp"

namespace fracsim {

/// Independent verification path for the closed-form solver.
///
/// Under tau = psi(t) - psi(a) the psi-Caputo system becomes a standard
/// Caputo system in tau with the control and its breakpoints mapped through
/// psi. That system is integrated with an Adams-Bashforth-Moulton
/// predictor-corrector (product rectangle predictor, product trapezoid
/// corrector, one corrector sweep) on a uniform tau grid with the mapped
/// breakpoints inserted as nodes, then mapped back and sampled on the
/// requested grid by linear interpolation.
///
/// `steps` >= 100 is the uniform step count of the tau grid.
Trajectory oracle_substitution_solve(const LinearFracSystem& sys, const InfusionSchedule& sched,
                                     std::span<const double> grid, int steps);

/// Runs the oracle at `steps` and 2x`steps` and raises AccuracyError when the
/// two disagree beyond `tol` (max norm over the requested grid), signalling a
/// step size too coarse for the scenario. Returns the finer solution.
Trajectory oracle_substitution_solve_checked(const LinearFracSystem& sys,
                                             const InfusionSchedule& sched,
                                             std::span<const double> grid, int steps, double tol);

}  // namespace fracsim
