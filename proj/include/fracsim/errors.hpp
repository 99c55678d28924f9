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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracsim {

/// A truncated series did not meet its tolerance within the allowed number of
/// terms. Carries the partial sum (flattened row-major for matrices) so
/// callers can inspect how far the evaluation got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> partial, int terms)
      : std::runtime_error(what), partial_sum(std::move(partial)), terms_used(terms) {}

  std::vector<double> partial_sum;
  int terms_used;
};

/// A quadrature or grid scheme could not reach the requested accuracy.
/// Carries the best estimate achieved together with its error estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate_, double error_)
      : std::runtime_error(what), estimate(estimate_), error_estimate(error_) {}

  double estimate;
  double error_estimate;
};

/// Scenario file could not be parsed or validated. `line` is 1-based and 0
/// when the problem is not tied to a specific line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line_ = 0)
      : std::runtime_error(what), line(line_) {}

  int line;
};

}  // namespace fracsim
