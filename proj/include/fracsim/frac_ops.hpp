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

#include <functional>
#include <optional>
#include <span>

#include "fracsim/psi.hpp"
#include "fracsim/quadrature.hpp"

namespace fracsim {

/// Left psi-Riemann-Liouville fractional integral
///
///   I_a^{alpha,psi} f(t) = (1/Gamma(alpha)) int_a^t psi'(s)
///                          (psi(t)-psi(s))^{alpha-1} f(s) ds
///
/// evaluated under the substitution x = psi(s) (which removes psi', so psi'
/// is never sampled at an endpoint where it may blow up) followed by
/// v = (psi(t)-x)^alpha, which absorbs the endpoint singularity exactly and
/// leaves a bounded integrand for the adaptive rule. alpha > 0; the orders
/// above 1 arise when iterating the operator.
double psi_rl_integral(const std::function<double(double)>& f, double alpha,
                       const PsiFunction& psi, double a, double t,
                       const QuadratureControl& ctl = {});

/// Same integral for a sampled function: integrates the piecewise-linear
/// interpolant (linear in psi(s)) of `values` against the singular kernel in
/// closed form per cell, up to grid index m. Used to chain grid-based
/// operators without nested adaptive quadrature.
double psi_rl_integral_sampled(std::span<const double> times, std::span<const double> values,
                               double alpha, const PsiFunction& psi, std::size_t m);

/// psi-Caputo fractional derivative of sampled data at grid index m, via the
/// L1 scheme on the transformed grid tau = psi(s):
///
///   D_a^{alpha,psi} f(t_m) ~= (1/Gamma(2-alpha)) sum_i (f_i - f_{i-1})
///       ((tau_m-tau_{i-1})^{1-alpha} - (tau_m-tau_i)^{1-alpha}) / dtau_i
///
/// alpha in (0,1]; at alpha = 1 the weights collapse to the backward
/// difference in tau. Fewer than 4 grid points before t_m raises
/// AccuracyError carrying the estimate computed from what is available.
double psi_caputo_derivative(std::span<const double> times, std::span<const double> values,
                             double alpha, const PsiFunction& psi, std::size_t m);

struct ConvolutionOptions {
  /// Set when f carries a (psi(s)-psi(a))^sigma factor with sigma in (-1,0):
  /// the quadrature is then anchored at that endpoint with the matching
  /// power substitution. Same for g.
  std::optional<double> f_power_at_a;
  std::optional<double> g_power_at_a;
  QuadratureControl quad;
};

/// Generalized psi-convolution
///
///   (f *_psi g)(t) = int_a^t f(s) g(psi^{-1}(psi(t)+psi(a)-psi(s))) psi'(s) ds
///
/// computed in x = psi(s) coordinates, where it is the symmetric form
/// int_A^T F(x) G(T+A-x) dx with A = psi(a), T = psi(t).
double generalized_convolution(const std::function<double(double)>& f,
                               const std::function<double(double)>& g, const PsiFunction& psi,
                               double a, double t, const ConvolutionOptions& opts = {});

}  // namespace fracsim
