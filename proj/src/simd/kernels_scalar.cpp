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

#include <cmath>

#include "ged/kernels.hpp"

namespace ged::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(w + r * cols, x, cols);
}

void gemv_t_acc(const double* w, std::size_t rows, std::size_t cols, const double* g,
                double* dx) {
  for (std::size_t r = 0; r < rows; ++r) {
    if (g[r] != 0.0) axpy(g[r], w + r * cols, dx, cols);
  }
}

void ger_acc(double* dw, std::size_t rows, std::size_t cols, const double* g, const double* x) {
  for (std::size_t r = 0; r < rows; ++r) {
    if (g[r] != 0.0) axpy(g[r], x, dw + r * cols, cols);
  }
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_acc(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void adam(double* theta, double* m, double* v, const double* g, std::size_t n, double lr,
          double beta1, double beta2, double eps, double c1, double c2) {
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    theta[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{Isa::kScalar, dot, axpy, gemv, gemv_t_acc, ger_acc,
                           mul,          mul_acc, add, adam};
  return table;
}

}  // namespace ged::kernels
