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

#include "fracsim/abm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsim/errors.hpp"
#include "fracsim/gamma.hpp"
#include "fracsim/kernels.hpp"

namespace fracsim {

namespace {

std::vector<double> build_tau_grid(double tau_end, int steps, const std::vector<double>& tau_breaks) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + tau_breaks.size() + 1);
  for (int i = 0; i <= steps; ++i)
    grid.push_back(tau_end * static_cast<double>(i) / static_cast<double>(steps));

  // Control switches must be grid nodes: the piecewise-constant control is
  // then exactly constant on every cell and the product-integration weights
  // see no hidden jumps.
  const double snap = 1e-12 * tau_end;
  for (double b : tau_breaks) {
    if (b <= snap || b >= tau_end - snap) continue;
    const auto it = std::lower_bound(grid.begin(), grid.end(), b);
    if (it != grid.end() && std::abs(*it - b) <= snap) continue;
    if (it != grid.begin() && std::abs(*(it - 1) - b) <= snap) continue;
    grid.insert(it, b);
  }
  return grid;
}

}  // namespace

Trajectory oracle_substitution_solve(const LinearFracSystem& sys, const InfusionSchedule& sched,
                                     std::span<const double> grid, int steps) {
  sys.validate();
  sched.validate();
  if (steps < 100) throw std::invalid_argument("oracle_substitution_solve: steps must be >= 100");
  if (grid.empty()) throw std::invalid_argument("oracle_substitution_solve: empty output grid");

  const double a_time = sys.start_time;
  const double psi_a = sys.psi.value(a_time);
  const double t_max = *std::max_element(grid.begin(), grid.end());
  for (double t : grid) {
    if (t < a_time || t > sched.end())
      throw std::domain_error("oracle_substitution_solve: grid point outside schedule coverage");
  }
  const double tau_end = sys.psi.value(t_max) - psi_a;
  const std::size_t n = sys.dim();

  Trajectory out;
  out.alpha = sys.alpha;
  out.psi_name = sys.psi.name();
  out.schedule_hash = sched.hash();
  out.times.assign(grid.begin(), grid.end());

  if (tau_end <= 0.0) {
    out.states.assign(grid.size(), sys.y0);
    return out;
  }

  std::vector<double> tau_breaks;
  for (double b : sched.breakpoints) tau_breaks.push_back(sys.psi.value(b) - psi_a);
  const std::vector<double> tau = build_tau_grid(tau_end, steps, tau_breaks);
  const std::size_t cells = tau.size() - 1;

  // Control per cell, mapped back through psi (cells never straddle a switch).
  std::vector<double> u_cell(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double mid = 0.5 * (tau[j] + tau[j + 1]);
    u_cell[j] = sched.rate_at(sys.psi.inverse(mid + psi_a));
  }

  const double alpha = sys.alpha;
  const double inv_gamma_alpha = recip_gamma(alpha);

  // Histories kept component-major so the per-step memory sums are dot
  // products over contiguous arrays.
  std::vector<std::vector<double>> y_hist(n, std::vector<double>(tau.size()));
  std::vector<std::vector<double>> z_hist(n, std::vector<double>(tau.size()));   // z = A y
  std::vector<std::vector<double>> dz_hist(n, std::vector<double>(cells, 0.0));  // z_{j+1}-z_j
  Vec y_node = sys.y0;
  Vec z_node = sys.a_matrix.apply(y_node);
  for (std::size_t i = 0; i < n; ++i) {
    y_hist[i][0] = y_node[i];
    z_hist[i][0] = z_node[i];
  }

  std::vector<double> w(tau.size()), wp1(tau.size()), j0(cells), j1d(cells);
  Vec y_pred(n), f_pred(n);

  for (std::size_t step = 0; step < cells; ++step) {
    const double big_t = tau[step + 1];

    // Kernel powers and per-cell weights up to the current front.
    for (std::size_t j = 0; j <= step + 1; ++j) {
      const double d = big_t - tau[j];
      w[j] = std::pow(d, alpha);
      wp1[j] = w[j] * d;
    }
    for (std::size_t j = 0; j <= step; ++j) {
      j0[j] = (w[j] - w[j + 1]) / alpha;
      const double j1 = (big_t - tau[j]) * j0[j] - (wp1[j] - wp1[j + 1]) / (alpha + 1.0);
      j1d[j] = j1 / (tau[j + 1] - tau[j]);
    }

    // Predictor: product rectangle with left cell values.
    const double u_dot_p = kernels::dot(j0.data(), u_cell.data(), step + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double acc = kernels::dot(j0.data(), z_hist[i].data(), step + 1) +
                         sys.b_input[i] * u_dot_p;
      y_pred[i] = sys.y0[i] + inv_gamma_alpha * acc;
    }
    kernels::matvec(sys.a_matrix.data(), y_pred.data(), f_pred.data(), n);

    // Corrector: product trapezoid; the last cell uses the predicted slope.
    const double u_n = u_cell[step];
    const double u_dot_c = step == 0 ? 0.0 : kernels::dot(j0.data(), u_cell.data(), step);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = kernels::dot(j0.data(), z_hist[i].data(), step) +
                   kernels::dot(j1d.data(), dz_hist[i].data(), step) +
                   sys.b_input[i] * u_dot_c;
      acc += (z_hist[i][step] + sys.b_input[i] * u_n) * j0[step] +
             (f_pred[i] - z_hist[i][step]) * j1d[step];
      y_node[i] = sys.y0[i] + inv_gamma_alpha * acc;
    }

    kernels::matvec(sys.a_matrix.data(), y_node.data(), z_node.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      y_hist[i][step + 1] = y_node[i];
      z_hist[i][step + 1] = z_node[i];
      dz_hist[i][step] = z_node[i] - z_hist[i][step];
    }
  }

  // Sample the tau-grid solution at the requested times.
  out.states.reserve(grid.size());
  for (double t : grid) {
    const double tq = std::clamp(sys.psi.value(t) - psi_a, 0.0, tau_end);
    const auto it = std::upper_bound(tau.begin(), tau.end(), tq);
    Vec y(n);
    if (it == tau.begin()) {
      y = sys.y0;
    } else if (it == tau.end()) {
      for (std::size_t i = 0; i < n; ++i) y[i] = y_hist[i].back();
    } else {
      const std::size_t hi = static_cast<std::size_t>(it - tau.begin());
      const std::size_t lo = hi - 1;
      const double lam = (tq - tau[lo]) / (tau[hi] - tau[lo]);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = (1.0 - lam) * y_hist[i][lo] + lam * y_hist[i][hi];
    }
    out.states.push_back(std::move(y));
  }
  return out;
}

Trajectory oracle_substitution_solve_checked(const LinearFracSystem& sys,
                                             const InfusionSchedule& sched,
                                             std::span<const double> grid, int steps, double tol) {
  const Trajectory coarse = oracle_substitution_solve(sys, sched, grid, steps);
  Trajectory fine = oracle_substitution_solve(sys, sched, grid, 2 * steps);

  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    worst = std::max(worst, max_abs_diff(coarse.states[j], fine.states[j]));
  if (worst > tol) {
    throw AccuracyError("oracle_substitution_solve: self-comparison at 2x steps disagrees", worst,
                        worst);
  }
  return fine;
}

}  // namespace fracsim
