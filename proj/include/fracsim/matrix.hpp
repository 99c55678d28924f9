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

#include <cstddef>
#include <vector>

namespace fracsim {

using Vec = std::vector<double>;

/// Small dense square matrix, row-major, value semantics. Sized for the
/// coupled systems this library deals in (n = 4 for the PK/PD model);
/// multiplication is routed through the dispatched kernels.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  SquareMatrix(std::size_t n, std::vector<double> entries);

  static SquareMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  SquareMatrix& operator+=(const SquareMatrix& other);
  SquareMatrix& operator*=(double s);

  Vec apply(const Vec& x) const;

  /// Largest absolute entry.
  double max_abs() const;

  bool is_finite() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(const SquareMatrix& a, double s);
SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b);

double max_abs(const Vec& v);
double max_abs_diff(const Vec& a, const Vec& b);

}  // namespace fracsim
