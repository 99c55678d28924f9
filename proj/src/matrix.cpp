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

#include "fracsim/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "fracsim/kernels.hpp"

namespace fracsim {

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw std::invalid_argument("SquareMatrix: entry count != n*n");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  kernels::axpy(1.0, other.a_.data(), a_.data(), a_.size());
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Vec SquareMatrix::apply(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("SquareMatrix::apply: dimension mismatch");
  Vec y(n_);
  kernels::matvec(a_.data(), x.data(), y.data(), n_);
  return y;
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SquareMatrix::is_finite() const {
  for (double v : a_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  SquareMatrix c(a.size());
  kernels::matmul(a.data(), b.data(), c.data(), a.size());
  return c;
}

SquareMatrix operator*(const SquareMatrix& a, double s) {
  SquareMatrix c = a;
  c *= s;
  return c;
}

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
  a += b;
  return a;
}

double max_abs(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fracsim
