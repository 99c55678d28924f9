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

#include "fracsim/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsim {

double gamma_ln(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_ln: argument must be positive");
  // Gamma(1) = Gamma(2) = 1 exactly; series code relies on the l = 0
  // coefficient of E_{alpha,1} being exactly 1.
  if (x == 1.0 || x == 2.0) return 0.0;

  // Lanczos approximation, g = 4.7421875, 14 coefficients. Good to ~1e-15
  // relative for x > 0.
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
      0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};

  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double recip_gamma(double x) { return std::exp(-gamma_ln(x)); }

}  // namespace fracsim
