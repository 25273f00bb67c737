// Copyright 2026 The EAP Authors.
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

#include <cmath>

#include "eap/kernels.h"

namespace eap::kernels {
namespace {

float DotScalar(const float* a, const float* b, std::size_t n) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double L1DistanceScalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double SumScalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void MulScalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void AxpbyScalar(double alpha, double* y, double beta, const double* x,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * y[i] + beta * x[i];
}

void CsrSpmvScalar(const std::uint64_t* row_ptr, const std::uint32_t* cols,
                   const double* values, const double* x, double* y,
                   std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::uint64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      acc += values[k] * x[cols[k]];
    }
    y[r] = acc;
  }
}

constexpr KernelTable kScalarTable = {
    Isa::kScalar,     DotScalar,   L1DistanceScalar, SumScalar,
    MulScalar,        AxpbyScalar, CsrSpmvScalar,
};

}  // namespace

const KernelTable& ScalarKernels() { return kScalarTable; }

}  // namespace eap::kernels
