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

#include "fracsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fracsim/errors.hpp"
#include "fracsim/frac_ops.hpp"
#include "fracsim/gamma.hpp"

namespace fracsim {

void LinearFracSystem::validate() const {
  const std::size_t n = a_matrix.size();
  if (n == 0) throw std::invalid_argument("LinearFracSystem: empty system matrix");
  if (!a_matrix.is_finite()) throw std::invalid_argument("LinearFracSystem: non-finite A");
  if (b_input.size() != n || y0.size() != n)
    throw std::invalid_argument("LinearFracSystem: A, B and y0 dimensions disagree");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("LinearFracSystem: alpha must be in (0,1]");
}

void InfusionSchedule::validate() const {
  if (breakpoints.size() < 2 || rates.size() + 1 != breakpoints.size())
    throw std::invalid_argument("InfusionSchedule: need K+1 breakpoints for K rates");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("InfusionSchedule: breakpoints must be strictly increasing");
  }
  for (double r : rates) {
    if (!std::isfinite(r) || r < 0.0)
      throw std::invalid_argument("InfusionSchedule: rates must be finite and nonnegative");
  }
}

double InfusionSchedule::rate_at(double t) const {
  if (t < breakpoints.front() || t >= breakpoints.back()) return 0.0;
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return rates[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

std::uint64_t InfusionSchedule::hash() const {
  // FNV-1a over the raw representation; used to tie trajectories to the
  // schedule that produced them.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (double b : breakpoints) mix(b);
  for (double r : rates) mix(r);
  return h;
}

namespace {

// d^alpha E_{alpha,alpha+1}(A d^alpha): the segment kernel integral
// int (psi(t)-psi(s))^{alpha-1} E_{alpha,alpha}(A (psi(t)-psi(s))^alpha) dx
// evaluated in closed form between two endpoints.
SquareMatrix forced_kernel(const SquareMatrix& a, double alpha, double delta,
                           const TruncationPolicy& policy) {
  const double da = std::pow(delta, alpha);
  if (da == 0.0) return SquareMatrix(a.size());
  return mittag_leffler(alpha, alpha + 1.0, a * da, policy) * da;
}

void add_to(Vec& acc, const Vec& v, double scale = 1.0) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * v[i];
}

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

SquareMatrix homogeneous_propagator(const LinearFracSystem& sys, double t,
                                    const TruncationPolicy& policy) {
  sys.validate();
  if (t < sys.start_time) throw std::domain_error("homogeneous_propagator: t < start time");
  const double d = sys.psi.value(t) - sys.psi.value(sys.start_time);
  return mittag_leffler(sys.alpha, 1.0, sys.a_matrix * std::pow(d, sys.alpha), policy);
}

Vec constant_input_step(const LinearFracSystem& sys, const Vec& y_start, const Vec& u_const,
                        double t_start, double t_end, const TruncationPolicy& policy) {
  sys.validate();
  if (y_start.size() != sys.dim() || u_const.size() != sys.dim())
    throw std::invalid_argument("constant_input_step: dimension mismatch");
  if (!(t_end > t_start)) throw std::domain_error("constant_input_step: requires t_end > t_start");

  const double d = sys.psi.value(t_end) - sys.psi.value(t_start);
  const double da = std::pow(d, sys.alpha);
  const SquareMatrix ada = sys.a_matrix * da;

  Vec y = mittag_leffler(sys.alpha, 1.0, ada, policy).apply(y_start);
  const Vec forced = mittag_leffler(sys.alpha, sys.alpha + 1.0, ada, policy).apply(u_const);
  add_to(y, forced, da);
  return y;
}

Trajectory solve_piecewise(const LinearFracSystem& sys, const InfusionSchedule& sched,
                           std::span<const double> grid, const TruncationPolicy& policy) {
  sys.validate();
  sched.validate();
  if (sched.start() != sys.start_time)
    throw std::invalid_argument("solve_piecewise: schedule must start at the system start time");

  const double a_time = sys.start_time;
  const double psi_a = sys.psi.value(a_time);
  for (double t : grid) {
    if (t < a_time || t > sched.end())
      throw std::domain_error("solve_piecewise: grid point outside schedule coverage");
  }

  const std::size_t n = sys.dim();
  const bool homogeneous_part = !all_zero(sys.y0);

  Trajectory traj;
  traj.alpha = sys.alpha;
  traj.psi_name = sys.psi.name();
  traj.schedule_hash = sched.hash();
  traj.times.assign(grid.begin(), grid.end());
  traj.states.reserve(grid.size());

  for (double t : grid) {
    const double psi_t = sys.psi.value(t);
    Vec y(n, 0.0);

    if (homogeneous_part) {
      const double d0 = psi_t - psi_a;
      y = mittag_leffler(sys.alpha, 1.0, sys.a_matrix * std::pow(d0, sys.alpha), policy)
              .apply(sys.y0);
    }

    for (std::size_t k = 0; k < sched.rates.size(); ++k) {
      const double seg_start = sched.breakpoints[k];
      if (seg_start >= t) break;
      const double u_k = sched.rates[k];
      if (u_k == 0.0) continue;
      const double seg_end = std::min(sched.breakpoints[k + 1], t);

      const SquareMatrix g1 = forced_kernel(sys.a_matrix, sys.alpha, psi_t - sys.psi.value(seg_start), policy);
      const SquareMatrix g2 = forced_kernel(sys.a_matrix, sys.alpha, psi_t - sys.psi.value(seg_end), policy);

      Vec contrib = g1.apply(sys.b_input);
      const Vec tail = g2.apply(sys.b_input);
      for (std::size_t i = 0; i < n; ++i) contrib[i] -= tail[i];
      add_to(y, contrib, u_k);
    }

    traj.states.push_back(std::move(y));
  }
  return traj;
}

Trajectory solve_general_u(const LinearFracSystem& sys, const std::function<double(double)>& u,
                           std::span<const double> grid, const TruncationPolicy& policy,
                           const QuadratureControl& quad) {
  sys.validate();
  const double a_time = sys.start_time;
  const double psi_a = sys.psi.value(a_time);
  const double inv_alpha = 1.0 / sys.alpha;

  Trajectory traj;
  traj.alpha = sys.alpha;
  traj.psi_name = sys.psi.name();
  traj.times.assign(grid.begin(), grid.end());
  traj.states.reserve(grid.size());

  for (double t : grid) {
    if (t < a_time) throw std::domain_error("solve_general_u: grid point before start time");
    const double psi_t = sys.psi.value(t);
    const double d0 = psi_t - psi_a;

    Vec y = mittag_leffler(sys.alpha, 1.0, sys.a_matrix * std::pow(d0, sys.alpha), policy)
                .apply(sys.y0);

    if (d0 > 0.0) {
      auto integrand = [&](double v) -> Vec {
        const double x = std::clamp(psi_t - std::pow(v, inv_alpha), psi_a, psi_t);
        const double s = std::clamp(sys.psi.inverse(x), a_time, t);
        Vec val = mittag_leffler(sys.alpha, sys.alpha, sys.a_matrix * v, policy).apply(sys.b_input);
        const double us = u(s);
        for (double& c : val) c *= us;
        return val;
      };
      const auto r = adaptive_gauss_kronrod(integrand, 0.0, std::pow(d0, sys.alpha), quad);
      add_to(y, r.value, inv_alpha);
    }

    traj.states.push_back(std::move(y));
  }
  return traj;
}

ResidualReport residual_check(const Trajectory& traj, const LinearFracSystem& sys,
                              const InfusionSchedule& sched, double exclusion_window) {
  sys.validate();
  sched.validate();
  const std::size_t npts = traj.times.size();
  if (npts < 6) throw std::invalid_argument("residual_check: trajectory grid too coarse");

  double step = 0.0;
  for (std::size_t i = 1; i < npts; ++i) step = std::max(step, traj.times[i] - traj.times[i - 1]);
  const double window = exclusion_window >= 0.0 ? exclusion_window : step;

  const std::size_t n = sys.dim();
  std::vector<std::vector<double>> components(n, std::vector<double>(npts));
  for (std::size_t j = 0; j < npts; ++j)
    for (std::size_t i = 0; i < n; ++i) components[i][j] = traj.states[j][i];

  ResidualReport report;
  for (std::size_t m = 4; m < npts; ++m) {
    const double t = traj.times[m];
    bool near_breakpoint = false;
    for (double b : sched.breakpoints) {
      if (std::abs(t - b) <= window) near_breakpoint = true;
    }
    if (near_breakpoint) continue;

    const double u_t = sched.rate_at(t);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double deriv =
          psi_caputo_derivative(traj.times, components[i], sys.alpha, sys.psi, m);
      double rhs = sys.b_input[i] * u_t;
      for (std::size_t j = 0; j < n; ++j) rhs += sys.a_matrix(i, j) * traj.states[m][j];
      worst = std::max(worst, std::abs(deriv - rhs));
    }
    report.indices.push_back(m);
    report.residuals.push_back(worst);
    report.max_residual = std::max(report.max_residual, worst);
  }
  return report;
}

}  // namespace fracsim
