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

#include "fracsim/matrix.hpp"

namespace fracsim {

/// Truncation control for the Mittag-Leffler power series.
///
/// The series stops once `consecutive_small_terms` successive terms each have
/// norm below rel_tol times the current partial-sum norm, and at least
/// ceil(1/alpha) + 2 terms have been summed (two-parameter terms can be
/// non-monotone early on). Exceeding max_terms raises ConvergenceError.
struct TruncationPolicy {
  double rel_tol = 1e-14;
  int consecutive_small_terms = 3;
  int max_terms = 500;

  void validate() const;
};

/// E_{alpha,alpha'}(z) = sum_{l>=0} z^l / Gamma(l alpha + alpha'),
/// for alpha > 0, alpha' > 0. The one-parameter function is alpha' = 1.
double mittag_leffler(double alpha, double alpha_prime, double z,
                      const TruncationPolicy& policy = {});

/// Matrix argument variant; powers are accumulated by repeated
/// multiplication. Intended for desk-scale arguments (||M|| up to ~10).
SquareMatrix mittag_leffler(double alpha, double alpha_prime, const SquareMatrix& m,
                            const TruncationPolicy& policy = {});

}  // namespace fracsim
