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

// Dense inner-loop primitives behind the matrix algebra and the history sums
// of the fractional predictor-corrector. Scalar reference versions are always
// available; on x86-64 an AVX2/FMA variant of each kernel is compiled in a
// separate translation unit and selected once at startup after a CPUID check.
// The dispatched entry points are the ones production code calls.

namespace fracsim::kernels {

// Reference implementations. These are the ground truth the SIMD variants are
// equivalence-tested against.
namespace scalar {

double dot(const double* x, const double* y, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// c = a * b for row-major n x n matrices; c must not alias a or b.
void matmul(const double* a, const double* b, double* c, std::size_t n);

// y = a * x for a row-major n x n matrix; y must not alias x.
void matvec(const double* a, const double* x, double* y, std::size_t n);

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {

double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void matmul(const double* a, const double* b, double* c, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t n);

}  // namespace avx2
#endif

/// True when the running CPU supports the AVX2+FMA code path.
bool cpu_has_avx2();

/// Name of the backend the dispatched entry points resolve to ("avx2" or
/// "scalar").
const char* active_backend();

double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void matmul(const double* a, const double* b, double* c, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t n);

}  // namespace fracsim::kernels
