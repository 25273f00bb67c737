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

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "eap/kernels.h"

namespace eap::kernels {

const KernelTable* Avx2KernelsUnchecked();
const KernelTable* NeonKernelsUnchecked();

namespace {

bool CpuHasAvx2Fma() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool ForceScalarFromEnv() {
  const char* v = std::getenv("EAP_FORCE_SCALAR");
  return v != nullptr && std::strcmp(v, "") != 0 && std::strcmp(v, "0") != 0;
}

const KernelTable& SelectActive() {
  if (ForceScalarFromEnv()) return ScalarKernels();
  if (const KernelTable* t = Avx2Kernels()) return *t;
  if (const KernelTable* t = NeonKernels()) return *t;
  return ScalarKernels();
}

void CheckSizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operand size mismatch");
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable* Avx2Kernels() {
  static const KernelTable* table =
      CpuHasAvx2Fma() ? Avx2KernelsUnchecked() : nullptr;
  return table;
}

// Every aarch64 core has Advanced SIMD, so compiling it in is the check.
const KernelTable* NeonKernels() { return NeonKernelsUnchecked(); }

const KernelTable& Active() {
  static const KernelTable& table = SelectActive();
  return table;
}

float Dot(std::span<const float> a, std::span<const float> b) {
  CheckSizes(a.size(), b.size());
  return Active().dot_f32(a.data(), b.data(), a.size());
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  CheckSizes(a.size(), b.size());
  return Active().l1_distance_f64(a.data(), b.data(), a.size());
}

double Sum(std::span<const double> a) {
  return Active().sum_f64(a.data(), a.size());
}

void Mul(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  CheckSizes(a.size(), b.size());
  CheckSizes(a.size(), out.size());
  Active().mul_f64(a.data(), b.data(), out.data(), a.size());
}

void Axpby(double alpha, std::span<double> y, double beta,
           std::span<const double> x) {
  CheckSizes(y.size(), x.size());
  Active().axpby_f64(alpha, y.data(), beta, x.data(), y.size());
}

}  // namespace eap::kernels
