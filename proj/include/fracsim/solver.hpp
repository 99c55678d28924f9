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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracsim/mittag_leffler.hpp"
#include "fracsim/psi.hpp"
#include "fracsim/quadrature.hpp"

namespace fracsim {

/// Linear system D_a^{alpha,psi} y = A y + B u(t), y(a) = y0, with
/// alpha in (0,1].
struct LinearFracSystem {
  SquareMatrix a_matrix;
  Vec b_input;
  double alpha = 1.0;
  PsiFunction psi;
  double start_time = 0.0;
  Vec y0;

  void validate() const;
  std::size_t dim() const { return a_matrix.size(); }
};

/// Piecewise-constant control: rate k applies on [breakpoints[k],
/// breakpoints[k+1]). Right-open by convention, so the value at a switch
/// instant belongs to the next segment.
struct InfusionSchedule {
  std::vector<double> breakpoints;  // strictly increasing, size K+1
  std::vector<double> rates;        // size K, nonnegative (mg/min)

  void validate() const;
  double start() const { return breakpoints.front(); }
  double end() const { return breakpoints.back(); }
  double rate_at(double t) const;
  std::uint64_t hash() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  double alpha = 1.0;
  std::string psi_name;
  std::uint64_t schedule_hash = 0;
};

/// E_alpha(A (psi(t)-psi(a))^alpha); identity at t = a.
SquareMatrix homogeneous_propagator(const LinearFracSystem& sys, double t,
                                    const TruncationPolicy& policy = {});

/// Exact response over one interval of constant forcing u (a full n-vector),
/// with y_start the state at sys.start_time and the forcing constant on
/// [t_start, t_end]:
///
///   y = E_alpha(A d^alpha) y_start + d^alpha E_{alpha,alpha+1}(A d^alpha) u
///
/// with d = psi(t_end) - psi(t_start). Valid as a solution only while the
/// forcing has been constant since sys.start_time; the piecewise solver
/// handles switched controls with the globally anchored form instead.
Vec constant_input_step(const LinearFracSystem& sys, const Vec& y_start, const Vec& u_const,
                        double t_start, double t_end, const TruncationPolicy& policy = {});

/// Evaluates the solution at every grid point through the exact
/// representation
///
///   y(t) = E_alpha(A (psi(t)-psi(a))^alpha) y0
///        + sum_k [ G(psi(t)-psi(s_k)) - G(psi(t)-psi(min(e_k,t))) ] B u_k,
///   G(d) = d^alpha E_{alpha,alpha+1}(A d^alpha),
///
/// summing segment contributions anchored at a. Fractional systems carry
/// memory, so the state is never restarted at breakpoints. Grid points must
/// lie within the schedule coverage.
Trajectory solve_piecewise(const LinearFracSystem& sys, const InfusionSchedule& sched,
                           std::span<const double> grid, const TruncationPolicy& policy = {});

/// General-control path: the forced term is integrated per grid point with
/// the singularity-absorbing substitution v = (psi(t)-psi(s))^alpha,
///
///   y_forced(t) = (1/alpha) int_0^{(psi(t)-psi(a))^alpha}
///                 E_{alpha,alpha}(A v) B u(s(v)) dv.
///
/// Piecewise-constant controls should use solve_piecewise, which is both
/// exact and much cheaper.
Trajectory solve_general_u(const LinearFracSystem& sys, const std::function<double(double)>& u,
                           std::span<const double> grid, const TruncationPolicy& policy = {},
                           const QuadratureControl& quad = {});

/// Discrete residual ||D^{alpha,psi} y - A y - B u|| per grid point, with the
/// psi-Caputo derivative taken from the trajectory samples by the L1 scheme.
/// Points within `exclusion_window` of a control breakpoint are skipped
/// (kernel singularity meets control jump); the window defaults to one grid
/// step. The first 4 grid points are skipped as well (the L1 stencil needs
/// history).
struct ResidualReport {
  std::vector<std::size_t> indices;   // grid indices that were evaluated
  std::vector<double> residuals;      // max-norm residual per evaluated point
  double max_residual = 0.0;
};

ResidualReport residual_check(const Trajectory& traj, const LinearFracSystem& sys,
                              const InfusionSchedule& sched, double exclusion_window = -1.0);

}  // namespace fracsim
