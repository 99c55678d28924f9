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

#include "fracsim/kernels.hpp"

#include <cstdlib>

namespace fracsim::kernels {

namespace {

#if defined(__x86_64__) || defined(_M_X64)
bool detect_avx2() {
  // FRACSIM_FORCE_SCALAR is an escape hatch for debugging and for exercising
  // the scalar path on AVX2 hardware.
  if (std::getenv("FRACSIM_FORCE_SCALAR") != nullptr) return false;
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#else
bool detect_avx2() { return false; }
#endif

struct Backend {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*matmul)(const double*, const double*, double*, std::size_t);
  void (*matvec)(const double*, const double*, double*, std::size_t);
  const char* name;
};

Backend select_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (detect_avx2()) {
    return {&avx2::dot, &avx2::axpy, &avx2::matmul, &avx2::matvec, "avx2"};
  }
#endif
  return {&scalar::dot, &scalar::axpy, &scalar::matmul, &scalar::matvec, "scalar"};
}

const Backend& backend() {
  static const Backend b = select_backend();
  return b;
}

}  // namespace

bool cpu_has_avx2() { return detect_avx2(); }

const char* active_backend() { return backend().name; }

double dot(const double* x, const double* y, std::size_t n) { return backend().dot(x, y, n); }

void axpy(double a, const double* x, double* y, std::size_t n) { backend().axpy(a, x, y, n); }

void matmul(const double* a, const double* b, double* c, std::size_t n) {
  backend().matmul(a, b, c, n);
}

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  backend().matvec(a, x, y, n);
}

}  // namespace fracsim::kernels
