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

#include "eap/kernels.h"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

#include <cmath>

namespace eap::kernels {
namespace {

float DotNeon(const float* a, const float* b, std::size_t n) {
  float32x4_t acc0 = vdupq_n_f32(0.0f);
  float32x4_t acc1 = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
    acc1 = vfmaq_f32(acc1, vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
  }
  float acc = vaddvq_f32(vaddq_f32(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double L1DistanceNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

double SumNeon(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += a[i];
  return total;
}

void MulNeon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void AxpbyNeon(double alpha, double* y, double beta, const double* x,
               std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t bx = vmulq_f64(vb, vld1q_f64(x + i));
    vst1q_f64(y + i, vfmaq_f64(bx, va, vld1q_f64(y + i)));
  }
  for (; i < n; ++i) y[i] = alpha * y[i] + beta * x[i];
}

// No gather on NEON; the row loop is unrolled by two instead.
void CsrSpmvNeon(const std::uint64_t* row_ptr, const std::uint32_t* cols,
                 const double* values, const double* x, double* y,
                 std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t k = row_ptr[r];
    const std::uint64_t end = row_ptr[r + 1];
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; k + 2 <= end; k += 2) {
      const double gathered[2] = {x[cols[k]], x[cols[k + 1]]};
      acc = vfmaq_f64(acc, vld1q_f64(values + k), vld1q_f64(gathered));
    }
    double total = vaddvq_f64(acc);
    for (; k < end; ++k) total += values[k] * x[cols[k]];
    y[r] = total;
  }
}

constexpr KernelTable kNeonTable = {
    Isa::kNeon, DotNeon,   L1DistanceNeon, SumNeon,
    MulNeon,    AxpbyNeon, CsrSpmvNeon,
};

}  // namespace

const KernelTable* NeonKernelsUnchecked() { return &kNeonTable; }

}  // namespace eap::kernels

#else

namespace eap::kernels {
const KernelTable* NeonKernelsUnchecked() { return nullptr; }
}  // namespace eap::kernels

#endif
