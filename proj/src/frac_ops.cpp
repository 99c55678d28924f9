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

#include "fracsim/frac_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsim/errors.hpp"
#include "fracsim/gamma.hpp"

namespace fracsim {

namespace {

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Kernel integrals of the product-trapezoid rule over one cell [p, q] with
// evaluation point T >= q:
//   J0 = int_p^q (T-s)^{alpha-1} ds
//   J1 = int_p^q (T-s)^{alpha-1} (s-p) ds
struct CellWeights {
  double j0, j1;
};

CellWeights cell_weights(double big_t, double p, double q, double alpha) {
  const double wp = big_t - p;
  const double wq = big_t - q;
  const double wpa = std::pow(wp, alpha);
  const double wqa = std::pow(wq, alpha);
  const double j0 = (wpa - wqa) / alpha;
  const double j1 = wp * j0 - (wpa * wp - wqa * wq) / (alpha + 1.0);
  return {j0, j1};
}

}  // namespace

double psi_rl_integral(const std::function<double(double)>& f, double alpha,
                       const PsiFunction& psi, double a, double t, const QuadratureControl& ctl) {
  if (!(alpha > 0.0)) throw std::domain_error("psi_rl_integral: alpha must be > 0");
  if (!(t > a)) throw std::domain_error("psi_rl_integral: requires t > a");

  const double psi_a = psi.value(a);
  const double psi_t = psi.value(t);
  const double big_v = std::pow(psi_t - psi_a, alpha);
  const double inv_alpha = 1.0 / alpha;

  auto integrand = [&](double v) {
    const double x = clamp(psi_t - std::pow(v, inv_alpha), psi_a, psi_t);
    const double s = clamp(psi.inverse(x), a, t);
    return f(s);
  };
  const auto r = adaptive_gauss_kronrod(integrand, 0.0, big_v, ctl);
  return r.value * recip_gamma(alpha + 1.0);
}

double psi_rl_integral_sampled(std::span<const double> times, std::span<const double> values,
                               double alpha, const PsiFunction& psi, std::size_t m) {
  if (!(alpha > 0.0)) throw std::domain_error("psi_rl_integral_sampled: alpha must be > 0");
  if (times.size() != values.size() || times.size() < 2)
    throw std::invalid_argument("psi_rl_integral_sampled: need matching samples, >= 2 points");
  if (m == 0 || m >= times.size())
    throw std::domain_error("psi_rl_integral_sampled: index out of range");

  const double tau_m = psi.value(times[m]);
  double acc = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double p = psi.value(times[i - 1]);
    const double q = psi.value(times[i]);
    const auto w = cell_weights(tau_m, p, q, alpha);
    acc += values[i - 1] * w.j0 + (values[i] - values[i - 1]) / (q - p) * w.j1;
  }
  return acc * recip_gamma(alpha);
}

double psi_caputo_derivative(std::span<const double> times, std::span<const double> values,
                             double alpha, const PsiFunction& psi, std::size_t m) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("psi_caputo_derivative: alpha must be in (0,1]");
  if (times.size() != values.size() || times.size() < 2)
    throw std::invalid_argument("psi_caputo_derivative: need matching samples, >= 2 points");
  if (m == 0 || m >= times.size())
    throw std::domain_error("psi_caputo_derivative: index out of range");

  const double tau_m = psi.value(times[m]);

  if (alpha == 1.0) {
    const double dtau = tau_m - psi.value(times[m - 1]);
    return (values[m] - values[m - 1]) / dtau;
  }

  const double one_minus = 1.0 - alpha;
  double acc = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double p = psi.value(times[i - 1]);
    const double q = psi.value(times[i]);
    const double w = std::pow(tau_m - p, one_minus) - std::pow(tau_m - q, one_minus);
    acc += (values[i] - values[i - 1]) / (q - p) * w;
  }
  const double estimate = acc * recip_gamma(2.0 - alpha);

  if (m < 4)
    throw AccuracyError("psi_caputo_derivative: fewer than 4 grid points before t", estimate, 0.0);
  return estimate;
}

double generalized_convolution(const std::function<double(double)>& f,
                               const std::function<double(double)>& g, const PsiFunction& psi,
                               double a, double t, const ConvolutionOptions& opts) {
  if (!(t > a)) throw std::domain_error("generalized_convolution: requires t > a");
  for (const auto& p : {opts.f_power_at_a, opts.g_power_at_a}) {
    if (p && !(*p > -1.0))
      throw std::invalid_argument("generalized_convolution: singular power must be > -1");
  }

  const double big_a = psi.value(a);
  const double big_t = psi.value(t);

  auto f_of_x = [&](double x) { return f(clamp(psi.inverse(clamp(x, big_a, big_t)), a, t)); };
  auto g_of_x = [&](double x) {
    // g is evaluated at psi^{-1}(T + A - x)
    const double y = clamp(big_t + big_a - x, big_a, big_t);
    return g(clamp(psi.inverse(y), a, t));
  };
  auto plain = [&](double x) { return f_of_x(x) * g_of_x(x); };

  const bool f_sing = opts.f_power_at_a && *opts.f_power_at_a < 0.0;
  const bool g_sing = opts.g_power_at_a && *opts.g_power_at_a < 0.0;

  // Power substitution clustering nodes at the singular end: with
  // u = (x - lo)^{1+sigma} (or mirrored), the x^{sigma}-type factor of the
  // integrand cancels against the Jacobian, leaving a bounded integrand.
  auto left_anchored = [&](double lo, double hi, double sigma) {
    const double ex = 1.0 + sigma;
    const double inv_ex = 1.0 / ex;
    auto sub = [&](double u) {
      const double x = clamp(lo + std::pow(u, inv_ex), lo, hi);
      return plain(x) * inv_ex * std::pow(u, inv_ex - 1.0);
    };
    return adaptive_gauss_kronrod(sub, 0.0, std::pow(hi - lo, ex), opts.quad).value;
  };
  auto right_anchored = [&](double lo, double hi, double sigma) {
    const double ex = 1.0 + sigma;
    const double inv_ex = 1.0 / ex;
    auto sub = [&](double u) {
      const double x = clamp(hi - std::pow(u, inv_ex), lo, hi);
      return plain(x) * inv_ex * std::pow(u, inv_ex - 1.0);
    };
    return adaptive_gauss_kronrod(sub, 0.0, std::pow(hi - lo, ex), opts.quad).value;
  };

  // The f factor is singular as x -> A, the g factor as x -> T.
  if (f_sing && g_sing) {
    const double mid = 0.5 * (big_a + big_t);
    return left_anchored(big_a, mid, *opts.f_power_at_a) +
           right_anchored(mid, big_t, *opts.g_power_at_a);
  }
  if (f_sing) return left_anchored(big_a, big_t, *opts.f_power_at_a);
  if (g_sing) return right_anchored(big_a, big_t, *opts.g_power_at_a);
  return adaptive_gauss_kronrod(plain, big_a, big_t, opts.quad).value;
}

}  // namespace fracsim
