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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "ged/error.hpp"
#include "ged/kernels.hpp"
#include "ged/rng.hpp"
#include "test_util.hpp"

using namespace ged;
using ged::testing::random_values;
using ged::testing::rel_diff;

namespace {

const kernels::Table* simd() {
  if (!kernels::cpu_has_avx2()) return nullptr;
  return kernels::avx2_table();
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::fabs(a[i] - b[i]) <= tol * std::max(1.0, std::fabs(a[i])));
  }
}

// Sizes around the 4-wide vector and 4-row block boundaries.
const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 301};

}  // namespace

TEST_CASE("scalar kernels on hand-worked inputs") {
  const auto& k = kernels::scalar_table();
  const double a[] = {1, 2, 3};
  const double b[] = {4, -5, 6};
  CHECK(k.dot(a, b, 3) == 12.0);

  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);

  const double w[] = {1, 2, 3, 4, 5, 6};  // 2x3
  double out[2];
  k.gemv(w, 2, 3, a, out);
  CHECK(out[0] == 14.0);
  CHECK(out[1] == 32.0);

  double dx[] = {0, 0, 0};
  const double g[] = {1, -1};
  k.gemv_t_acc(w, 2, 3, g, dx);
  CHECK(dx[0] == -3.0);
  CHECK(dx[1] == -3.0);
  CHECK(dx[2] == -3.0);

  double dw[6] = {};
  k.ger_acc(dw, 2, 3, g, a);
  CHECK(dw[0] == 1.0);
  CHECK(dw[5] == -3.0);

  double m[3];
  k.mul(a, b, m, 3);
  CHECK(m[1] == -10.0);
  k.mul_acc(a, b, m, 3);
  CHECK(m[1] == -20.0);
  k.add(a, b, m, 3);
  CHECK(m[2] == 9.0);
}

TEST_CASE("scalar adam step matches the closed form") {
  const auto& k = kernels::scalar_table();
  double theta[] = {1.0};
  double m[] = {0.0};
  double v[] = {0.0};
  const double g[] = {0.5};
  const double c1 = 1 - 0.9, c2 = 1 - 0.999;
  k.adam(theta, m, v, g, 1, 0.001, 0.9, 0.999, 1e-8, c1, c2);
  CHECK(m[0] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(v[0] == doctest::Approx(0.00025).epsilon(1e-15));
  // First step moves by lr * g / (|g| + eps) ~ lr.
  CHECK(theta[0] == doctest::Approx(1.0 - 0.001 * 0.5 / (0.5 + 1e-8)).epsilon(1e-14));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const auto* fast = simd();
  if (fast == nullptr) {
    MESSAGE("AVX2 kernels unavailable; skipping equivalence checks");
    return;
  }
  const auto& ref = kernels::scalar_table();
  Rng rng(99);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto a = random_values(rng, n);
    const auto b = random_values(rng, n);

    CHECK(rel_diff(ref.dot(a.data(), b.data(), n), fast->dot(a.data(), b.data(), n)) < 1e-12);

    auto y1 = b, y2 = b;
    ref.axpy(0.37, a.data(), y1.data(), n);
    fast->axpy(0.37, a.data(), y2.data(), n);
    check_close(y1, y2, 1e-15);

    std::vector<double> o1(n), o2(n);
    ref.mul(a.data(), b.data(), o1.data(), n);
    fast->mul(a.data(), b.data(), o2.data(), n);
    CHECK(o1 == o2);
    ref.mul_acc(a.data(), b.data(), o1.data(), n);
    fast->mul_acc(a.data(), b.data(), o2.data(), n);
    check_close(o1, o2, 1e-15);
    ref.add(a.data(), b.data(), o1.data(), n);
    fast->add(a.data(), b.data(), o2.data(), n);
    CHECK(o1 == o2);

    for (std::size_t rows : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{9}}) {
      CAPTURE(rows);
      const auto w = random_values(rng, rows * n);
      const auto g = random_values(rng, rows);
      std::vector<double> r1(rows), r2(rows);
      ref.gemv(w.data(), rows, n, a.data(), r1.data());
      fast->gemv(w.data(), rows, n, a.data(), r2.data());
      check_close(r1, r2, 1e-12);

      auto dx1 = b, dx2 = b;
      ref.gemv_t_acc(w.data(), rows, n, g.data(), dx1.data());
      fast->gemv_t_acc(w.data(), rows, n, g.data(), dx2.data());
      check_close(dx1, dx2, 1e-12);

      auto dw1 = w, dw2 = w;
      ref.ger_acc(dw1.data(), rows, n, g.data(), a.data());
      fast->ger_acc(dw2.data(), rows, n, g.data(), a.data());
      check_close(dw1, dw2, 1e-15);
    }

    auto th1 = a, th2 = a;
    auto m1 = random_values(rng, n, 0.1), m2 = m1;
    std::vector<double> v1(n), v2;
    for (double& x : v1) x = rng.uniform(0.0, 0.01);
    v2 = v1;
    ref.adam(th1.data(), m1.data(), v1.data(), b.data(), n, 1e-3, 0.9, 0.999, 1e-8, 0.19, 0.002);
    fast->adam(th2.data(), m2.data(), v2.data(), b.data(), n, 1e-3, 0.9, 0.999, 1e-8, 0.19, 0.002);
    check_close(m1, m2, 1e-15);
    check_close(v1, v2, 1e-15);
    check_close(th1, th2, 1e-14);
  }
}

TEST_CASE("kernel selection") {
  const auto before = kernels::active().isa;
  kernels::set_isa(kernels::Isa::kScalar);
  CHECK(kernels::active().isa == kernels::Isa::kScalar);
  CHECK(kernels::isa_name(kernels::Isa::kScalar) == "scalar");
  CHECK(kernels::isa_name(kernels::Isa::kAvx2) == "avx2");
  if (simd() != nullptr) {
    kernels::set_isa(kernels::Isa::kAvx2);
    CHECK(kernels::active().isa == kernels::Isa::kAvx2);
  } else {
    CHECK_THROWS_AS(kernels::set_isa(kernels::Isa::kAvx2), ContractError);
  }
  kernels::set_isa(before);
}
