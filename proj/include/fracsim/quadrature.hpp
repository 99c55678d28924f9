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

#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <limits>
#include <type_traits>
#include <vector>

#include "fracsim/errors.hpp"
#include "fracsim/matrix.hpp"

namespace fracsim {

struct QuadratureControl {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_depth = 52;
};

template <class T>
struct QuadratureResult {
  T value;
  double error_estimate = 0.0;
};

namespace quad_detail {

// 7-15 Gauss-Kronrod pair on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(const Vec& v) { return max_abs(v); }

inline void add_scaled(double& acc, double w, double v) { acc += w * v; }
inline void add_scaled(Vec& acc, double w, const Vec& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
}

inline double zero_like(double) { return 0.0; }
inline Vec zero_like(const Vec& v) { return Vec(v.size(), 0.0); }

inline void scale(double& v, double s) { v *= s; }
inline void scale(Vec& v, double s) {
  for (double& x : v) x *= s;
}

template <class F, class T>
void gk15(F& f, double lo, double hi, T& result, double& error) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);

  const T fc = f(c);
  T resk = zero_like(fc);
  T resg = zero_like(fc);
  add_scaled(resk, kWgk[7], fc);
  add_scaled(resg, kWg[3], fc);

  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    add_scaled(resk, kWgk[j], f1);
    add_scaled(resk, kWgk[j], f2);
    if (j % 2 == 1) {  // Gauss points are the odd-index Kronrod points
      add_scaled(resg, kWg[j / 2], f1);
      add_scaled(resg, kWg[j / 2], f2);
    }
  }

  scale(resk, h);
  scale(resg, h);
  T diff = resk;
  add_scaled(diff, -1.0, resg);
  error = norm_of(diff);
  result = resk;
}

}  // namespace quad_detail

/// Adaptive Gauss-Kronrod integration of f over [lo, hi]. F may return double
/// or Vec; error control uses the max norm. Intervals are bisected until the
/// local error estimate fits within the length-proportional share of the
/// budget; if the total error still exceeds the budget, AccuracyError is
/// thrown carrying the estimate (norm for vector integrands).
template <class F>
auto adaptive_gauss_kronrod(F&& f, double lo, double hi, const QuadratureControl& ctl = {})
    -> QuadratureResult<std::decay_t<decltype(f(lo))>> {
  using T = std::decay_t<decltype(f(lo))>;

  if (!(hi > lo)) throw std::domain_error("adaptive_gauss_kronrod: empty interval");

  T rough;
  double rough_err = 0.0;
  quad_detail::gk15(f, lo, hi, rough, rough_err);

  const double budget =
      std::max(ctl.abs_tol, ctl.rel_tol * std::max(quad_detail::norm_of(rough), 1e-300));
  const double total_len = hi - lo;

  struct Piece {
    double lo, hi;
    int depth;
  };
  std::vector<Piece> pending{{lo, hi, 0}};
  T total = quad_detail::zero_like(rough);
  double total_err = 0.0;

  while (!pending.empty()) {
    const Piece p = pending.back();
    pending.pop_back();

    T val;
    double err = 0.0;
    quad_detail::gk15(f, p.lo, p.hi, val, err);

    const double share = budget * ((p.hi - p.lo) / total_len);
    const bool finite = std::isfinite(quad_detail::norm_of(val)) && std::isfinite(err);
    if (!finite && p.depth >= ctl.max_depth) {
      throw AccuracyError("adaptive_gauss_kronrod: integrand not finite", 0.0,
                          std::numeric_limits<double>::infinity());
    }
    if (finite && (err <= share || p.depth >= ctl.max_depth)) {
      quad_detail::add_scaled(total, 1.0, val);
      total_err += err;
    } else {
      const double mid = 0.5 * (p.lo + p.hi);
      pending.push_back({p.lo, mid, p.depth + 1});
      pending.push_back({mid, p.hi, p.depth + 1});
    }
  }

  if (total_err > 2.0 * std::max(ctl.abs_tol, ctl.rel_tol * quad_detail::norm_of(total))) {
    std::ostringstream msg;
    msg << "adaptive_gauss_kronrod: requested tolerance not reached (error estimate " << total_err
        << ")";
    throw AccuracyError(msg.str(), quad_detail::norm_of(total), total_err);
  }
  return {total, total_err};
}

}  // namespace fracsim
