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

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#pragma once

#include <cstdint>
#include <vector>

#include "fracsim/matrix.hpp"
#include "fracsim/solver.hpp"

namespace oracles {

/// Matrix exponential by scaling-and-squaring with a full-precision Taylor
/// core. Independent of the Mittag-Leffler series (different reduction,
/// different termination).
fracsim::SquareMatrix expm(const fracsim::SquareMatrix& m);

/// Classical fixed-step RK4 for dy/dt = A y + B u(t) with a piecewise
/// constant u; integration is split exactly at the control breakpoints.
/// Returns the states at the requested grid times.
std::vector<fracsim::Vec> rk4_piecewise(const fracsim::SquareMatrix& a, const fracsim::Vec& b,
                                        const fracsim::InfusionSchedule& sched,
                                        const fracsim::Vec& y0,
                                        const std::vector<double>& grid, double h_max);

/// Dense LU solve / inverse for small systems (test-scale only).
fracsim::Vec lu_solve(fracsim::SquareMatrix a, fracsim::Vec rhs);
fracsim::SquareMatrix invert(const fracsim::SquareMatrix& a);

/// The four-compartment rate matrix of the standard 53 y / 77 kg / 177 cm
/// male scenario, entered from the published four-decimal values.
fracsim::SquareMatrix reference_matrix();
fracsim::Vec reference_input();
fracsim::InfusionSchedule reference_schedule();

inline constexpr double kSwitchTime = 0.5467;
inline constexpr double kHorizon = 1.8397;
inline constexpr double kBolusRate = 106.0907;

/// Eigenvalues of reference_matrix(), frozen from an offline characteristic
/// polynomial root solve; all real and distinct (the 3x3 PK block is
/// block-triangular with the effect-site rate). Tests re-verify the residual
/// before relying on them.
inline constexpr double kReferenceEigenvalues[4] = {-0.9418436337787269, -0.04509528589762495,
                                                -0.002361080323648076, -0.456};

/// Eigenvector of `a` for an (approximately known) eigenvalue, via inverse
/// iteration. Normalized to unit max component.
fracsim::Vec eigenvector(const fracsim::SquareMatrix& a, double lambda);

/// splitmix64: tiny deterministic RNG so expected values do not depend on
/// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

}  // namespace oracles
