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

namespace fracsim {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
///
/// Every reciprocal-Gamma series coefficient in this library is formed as
/// exp(-gamma_ln(.)) so that coefficients stay representable far past the
/// Gamma(171) overflow point of a direct evaluation.
double gamma_ln(double x);

/// exp(-gamma_ln(x)): the reciprocal Gamma coefficient 1/Gamma(x).
double recip_gamma(double x);

}  // namespace fracsim
