// Copyright 2026 The ged Authors.
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

// Dense double-precision kernels behind the autodiff ops and the optimizer.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The active table is chosen once at startup from CPUID
// and can be overridden with GED_SIMD=scalar|avx2 or set_isa(). Variants agree
// to rounding (different summation order and fused multiply-add); within one
// ISA results are bitwise reproducible.

#include <cstddef>
#include <string_view>

namespace ged::kernels {

enum class Isa { kScalar, kAvx2 };

struct Table {
  Isa isa;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y = W x, W row-major rows x cols
  void (*gemv)(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y);
  /// dx += W^T g
  void (*gemv_t_acc)(const double* w, std::size_t rows, std::size_t cols, const double* g,
                     double* dx);
  /// dW += g x^T
  void (*ger_acc)(double* dw, std::size_t rows, std::size_t cols, const double* g,
                  const double* x);
  /// out = a (*) b
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  /// out += a (*) b
  void (*mul_acc)(const double* a, const double* b, double* out, std::size_t n);
  /// out = a + b
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  /// Adam moment update and parameter step for one array.
  /// m = b1 m + (1-b1) g; v = b2 v + (1-b2) g^2;
  /// theta -= lr * (m / c1) / (sqrt(v / c2) + eps), c1/c2 the bias corrections.
  void (*adam)(double* theta, double* m, double* v, const double* g, std::size_t n, double lr,
               double beta1, double beta2, double eps, double c1, double c2);
};

const Table& scalar_table();
/// nullptr when the binary was built without AVX2 support.
const Table* avx2_table();

/// True when the running CPU can execute the AVX2 table.
bool cpu_has_avx2();

/// The table currently used by the library.
const Table& active();

/// Switch the active table. Throws ContractError when the ISA is unavailable.
void set_isa(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace ged::kernels
