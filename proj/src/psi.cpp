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

#include "fracsim/psi.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracsim {

PsiFunction PsiFunction::power(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("PsiFunction::power: exponent must be > 0");
  return PsiFunction(Kind::power, p);
}

double PsiFunction::value(double t) const {
  switch (kind_) {
    case Kind::identity: return t;
    case Kind::shift: return t + param_;
    case Kind::power: return std::pow(t, param_);
    case Kind::sqrt_kind: return std::sqrt(t);
  }
  return t;
}

double PsiFunction::slope(double t) const {
  switch (kind_) {
    case Kind::identity: return 1.0;
    case Kind::shift: return 1.0;
    case Kind::power: return param_ * std::pow(t, param_ - 1.0);
    case Kind::sqrt_kind: return 0.5 / std::sqrt(t);
  }
  return 1.0;
}

double PsiFunction::inverse(double x) const {
  switch (kind_) {
    case Kind::identity: return x;
    case Kind::shift: return x - param_;
    case Kind::power: return std::pow(x, 1.0 / param_);
    case Kind::sqrt_kind: return x * x;
  }
  return x;
}

std::string PsiFunction::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::sqrt_kind: return "sqrt";
    case Kind::shift: os << "shift:" << param_; return os.str();
    case Kind::power: os << "power:" << param_; return os.str();
  }
  return "identity";
}

PsiFunction PsiFunction::parse(std::string_view spec) {
  if (spec == "identity") return identity();
  if (spec == "sqrt") return sqrt();

  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view head = spec.substr(0, colon);
    const std::string_view tail = spec.substr(colon + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), v);
    if (ec == std::errc() && ptr == tail.data() + tail.size()) {
      if (head == "shift") return shift(v);
      if (head == "power") return power(v);
    }
  }
  throw std::invalid_argument("PsiFunction::parse: bad spec '" + std::string(spec) +
                              "' (expected identity | shift:<c> | power:<p> | sqrt)");
}

}  // namespace fracsim
