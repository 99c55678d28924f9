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

#include <string>
#include <string_view>

namespace fracsim {

/// Strictly increasing time-rescaling function with value, derivative and
/// inverse. The supported kinds are identity, shift (t + c), power (t^p with
/// p > 0) and sqrt.
///
/// For sqrt (and power with p < 1) the derivative is unbounded at t = 0, and
/// for power with p > 1 it vanishes there; both are fine at the interval
/// endpoint because every operator in this library works either with psi
/// values alone or under the substitution x = psi(s), which removes psi'.
class PsiFunction {
 public:
  enum class Kind { identity, shift, power, sqrt_kind };

  PsiFunction() : kind_(Kind::identity), param_(0.0) {}

  static PsiFunction identity() { return PsiFunction(Kind::identity, 0.0); }
  static PsiFunction shift(double c) { return PsiFunction(Kind::shift, c); }
  static PsiFunction power(double p);
  static PsiFunction sqrt() { return PsiFunction(Kind::sqrt_kind, 0.5); }

  /// Parses a spec string: "identity", "shift:<c>", "power:<p>", "sqrt".
  /// Throws std::invalid_argument on malformed or non-increasing specs.
  static PsiFunction parse(std::string_view spec);

  double value(double t) const;
  double slope(double t) const;  // psi'(t)
  double inverse(double x) const;

  Kind kind() const { return kind_; }
  double param() const { return param_; }

  /// Canonical spec string ("identity", "shift:0.2", ...).
  std::string name() const;

 private:
  PsiFunction(Kind k, double p) : kind_(k), param_(p) {}

  Kind kind_;
  double param_;
};

}  // namespace fracsim
