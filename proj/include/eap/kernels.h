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

#ifndef EAP_KERNELS_H_
#define EAP_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops of the ranker. Every kernel has a scalar
// reference implementation; vector variants (AVX2+FMA on x86-64, NEON on
// aarch64) are selected once at startup from CPU features and must agree
// with the reference up to floating-point reassociation.
namespace eap::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

// Raw-pointer signatures so the tables can be filled from translation units
// compiled with different target flags.
struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i], float accumulation.
  float (*dot_f32)(const float* a, const float* b, std::size_t n);
  // sum_i |a[i] - b[i]|
  double (*l1_distance_f64)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]
  double (*sum_f64)(const double* a, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul_f64)(const double* a, const double* b, double* out,
                  std::size_t n);
  // y[i] = alpha * y[i] + beta * x[i]
  void (*axpby_f64)(double alpha, double* y, double beta, const double* x,
                    std::size_t n);
  // y[r] = sum_{k in row r} values[k] * x[cols[k]]   (CSR, 32-bit columns)
  void (*csr_spmv_f64)(const std::uint64_t* row_ptr, const std::uint32_t* cols,
                       const double* values, const double* x, double* y,
                       std::size_t rows);
};

const KernelTable& ScalarKernels();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

// Best available table. Setting EAP_FORCE_SCALAR=1 in the environment pins
// the scalar reference (useful when bisecting numeric differences).
const KernelTable& Active();

// Span front-ends over Active().
float Dot(std::span<const float> a, std::span<const float> b);
double L1Distance(std::span<const double> a, std::span<const double> b);
double Sum(std::span<const double> a);
void Mul(std::span<const double> a, std::span<const double> b,
         std::span<double> out);
void Axpby(double alpha, std::span<double> y, double beta,
           std::span<const double> x);

}  // namespace eap::kernels

#endif  // EAP_KERNELS_H_
